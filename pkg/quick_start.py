#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
快速启动脚本 - 紧集构造实验室
"""

import os
import sys


def check_dependencies():
    """检查依赖包"""
    required_packages = ['numpy', 'pandas']
    missing_packages = []

    for package in required_packages:
        try:
            __import__(package)
        except ImportError:
            missing_packages.append(package)

    if missing_packages:
        print("❌ 缺少以下依赖包:")
        for pkg in missing_packages:
            print(f"   - {pkg}")
        print("\n请运行以下命令安装:")
        print("pip install -r requirements.txt")
        return False

    return True


def create_directories():
    """创建必要的目录"""
    for directory in ['logs', 'data']:
        os.makedirs(directory, exist_ok=True)


def main():
    """主函数"""
    print("🔷 Q⁺(5,q) 紧集 / Cameron–Liebler 线类实验室")
    print("=" * 40)

    if not check_dependencies():
        sys.exit(1)

    create_directories()

    print("✅ 系统检查完成")
    print("\n📐 可构造的 q: q ≡ 5 或 9 (mod 12)，例如 5, 9, 17, 29, 41, 81")
    print("\n🚀 使用说明:")
    print("1. 构造并验证 q=5，写出产物文件:")
    print("   python tightset_lab.py construct --q 5")
    print("2. 重新验证产物文件:")
    print("   python tightset_lab.py verify data/tightsets_q5.json")
    print("3. q=9 的可裂分解表:")
    print("   python tightset_lab.py report-decomposition --q 9")
    print("4. 某条直线的图样:")
    print("   python tightset_lab.py report-pattern --q 5 --line 0")
    print("5. 特征和恒等式:")
    print("   python tightset_lab.py verify-charsums --q 9")
    print("6. 大 q 计时:")
    print("   python tightset_lab.py bench --qs 17 29 --threads 8")
    print("\n⚙️ 默认参数见 config.py；--json 切换为机器可读输出")


if __name__ == "__main__":
    main()
