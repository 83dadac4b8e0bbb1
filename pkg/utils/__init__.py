# -*- coding: utf-8 -*-
"""
工具模块：域塔、特征、Klein 二次曲面、紧集构造、PG(3,q)、验证与产物读写
"""
