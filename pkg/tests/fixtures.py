# -*- coding: utf-8 -*-
"""
测试共用的构造结果 (每个 q 只构造一次)
"""

from functools import lru_cache

from utils.field_tower import build_tower, factor_prime_power
from utils.klein_quadric import QuadricModel, compute_orbits, find_plucker_frame
from utils.pg3_geometry import build_scene, klein_map, locate_special_elements, transfer_tight_set
from utils.tightset_builder import (build_orbit_sum_matrices, build_sign_partition, build_special_set,
                                    build_tight_sets)


@lru_cache(maxsize=None)
def tower(q: int, sign: str = 'minus'):
    p, h = factor_prime_power(q)
    return build_tower(p, h, omega_sign=sign)


@lru_cache(maxsize=None)
def quadric(q: int, sign: str = 'minus'):
    model = QuadricModel(tower(q, sign))
    return model, compute_orbits(model)


@lru_cache(maxsize=None)
def construction(q: int, sign: str = 'minus'):
    t = tower(q, sign)
    model, orbits = quadric(q, sign)
    S = build_special_set(t)
    partition = build_sign_partition(t, S)
    matrices = build_orbit_sum_matrices(t, S)
    sets = build_tight_sets(t, model, orbits, S, partition, matrices)
    return {'S': S, 'partition': partition, 'matrices': matrices, 'sets': sets}


@lru_cache(maxsize=None)
def pg3(q: int, sign: str = 'minus'):
    t = tower(q, sign)
    model, _ = quadric(q, sign)
    frame = find_plucker_frame(t)
    scene = build_scene(t, frame)
    klein = klein_map(model, frame, scene)
    p0, pi = locate_special_elements(model, scene, klein)
    sets = construction(q, sign)['sets']
    line_classes = {}
    for ts in sets.values():
        lc = transfer_tight_set(ts, klein)
        line_classes[lc.label] = lc
    return {'frame': frame, 'scene': scene, 'klein': klein, 'p0': p0, 'pi': pi, 'line_classes': line_classes}
