# -*- coding: utf-8 -*-
"""
(q²-1)/2-紧集的构造

S → 符号划分 X₁/X₂ → 矩阵 B_s、B、H → 特征向量提升 → T₁, T₂, T₁′, T₂′。
轨道以 (s, a) 为键 (a ∈ S)，点代表元取 (1, ω^s a²)。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import CONSTRUCT_CONFIG, VERIFY_CONFIG
from utils.character_engine import CharacterEngine
from utils.check_report import CheckReport
from utils.errors import (AssemblyMismatch, BadFlag, HMismatch, IdentityViolation, InvalidQ, LiftFailure,
                          NotTactical, PartitionInconsistent, SizeMismatch)
from utils.field_tower import FieldTower
from utils.klein_quadric import IsometryMap, OrbitTable, QuadricModel


@dataclass
class SpecialSet:
    elements: np.ndarray          # S，按离散对数排序
    a1_position: int = 0

    @property
    def a1(self) -> int:
        return int(self.elements[self.a1_position])

    @property
    def size(self) -> int:
        return len(self.elements)

    def position(self, a: int) -> int:
        hits = np.nonzero(self.elements == a)[0]
        if len(hits) == 0:
            raise KeyError(a)
        return int(hits[0])

    def to_dict(self) -> dict:
        return {'elements': self.elements.tolist(), 'a1_index': self.a1}


@dataclass
class SignPartition:
    in_x1: np.ndarray             # 按 S 中位置
    signs: np.ndarray             # χ₂(2T(a_i a_j))

    @property
    def x1(self) -> np.ndarray:
        return np.nonzero(self.in_x1)[0]

    @property
    def x2(self) -> np.ndarray:
        return np.nonzero(~self.in_x1)[0]


@dataclass
class OrbitSumMatrix:
    blocks: np.ndarray            # (4, q+1, q+1)，blocks[s][i][j] = κ_s(a_i², a_j²)
    B: np.ndarray                 # 4(q+1) 阶，下标 (s, i) ↦ s(q+1) + i
    tactical: Optional[CheckReport] = None

    @property
    def n(self) -> int:
        return self.blocks.shape[1]


@dataclass
class TightSet:
    label: str
    q: int
    parameter_x: int
    points: np.ndarray
    orbit_keys: List[Tuple[int, int]] = field(default_factory=list)    # (s, S 中位置)
    sign_convention: str = 'minus'
    a1_index: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.points)

    def mask(self, num_points: int) -> np.ndarray:
        m = np.zeros(num_points, dtype=bool)
        m[self.points] = True
        return m

    def to_dict(self, model: QuadricModel, S: Optional[SpecialSet] = None) -> dict:
        keys = [[int(s), int(S.elements[i]) if S is not None else int(i)] for s, i in self.orbit_keys]
        return {
            'label': self.label,
            'q': self.q,
            'parameter_x': self.parameter_x,
            'sign_convention': self.sign_convention,
            'a1_index': self.a1_index,
            'orbit_keys': keys,
            'points': [[int(model.u[i]), int(model.v[i])] for i in self.points],
        }


def check_admissible(q: int):
    if q % 12 not in CONSTRUCT_CONFIG['admissible_residues']:
        raise InvalidQ(f"q={q} ≡ {q % 12} (mod 12)，构造要求 q ≡ 5 或 9 (mod 12)", witness=q)


def _chi2_codes(t: FieldTower, codes: np.ndarray) -> np.ndarray:
    """F 码上的二次特征：0 ↦ 0，ω^k ↦ (-1)^k"""
    codes = np.asarray(codes)
    return np.where(codes == 0, 0, np.where((codes - 1) % 2 == 0, 1, -1))


def build_special_set(tower: FieldTower, a1_log: Optional[int] = None) -> SpecialSet:
    """S = {a : N(a) = 1, T(a²) = 0}，a₁ 默认取离散对数最小者"""
    t = tower
    check_admissible(t.q)
    elements = t.special_elements()
    if len(elements) != t.q + 1:
        raise SizeMismatch(f"|S| = {len(elements)}，应为 {t.q + 1}", witness=elements.tolist())
    position = 0
    a1_log = CONSTRUCT_CONFIG['a1_log'] if a1_log is None else a1_log
    if a1_log is not None:
        a1 = t.exp(int(a1_log))
        hits = np.nonzero(elements == a1)[0]
        if len(hits) == 0:
            raise BadFlag(f"α^{a1_log} 不在 S 中", witness={'a1_log': a1_log, 'S_logs': t.log(elements).tolist()})
        position = int(hits[0])
    return SpecialSet(elements, position)


def build_sign_partition(tower: FieldTower, S: SpecialSet) -> SignPartition:
    """a ∈ X₂ 当且仅当 χ₂(2T(a₁a)) = -1；同时检查两两关系的一致性"""
    t = tower
    a = S.elements
    two = t.element(2)
    prods = t.mul(two, t.trace(t.mul(a[:, None], a[None, :])))
    signs = _chi2_codes(t, t.f_code_table[prods])
    in_x1 = signs[S.a1_position] != -1

    same = in_x1[:, None] == in_x1[None, :]
    off_diag = ~np.eye(S.size, dtype=bool)
    bad = off_diag & ((signs == 1) != same)
    bad |= off_diag & (signs == 0)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise PartitionInconsistent(
            "χ₂(2T(ab)) 与划分不一致",
            witness={'a1': S.a1, 'a': int(a[i]), 'b': int(a[j]), 'sign': int(signs[i, j])})
    return SignPartition(in_x1, signs)


def verify_special_set(tower: FieldTower, S: SpecialSet, partition: SignPartition) -> CheckReport:
    """S 中元素都是平方；Frobenius 置换 S 并保持 X₁、X₂"""
    t = tower
    rep = CheckReport('special_set', t.q, domain_size=S.size, error_class=PartitionInconsistent)
    rep.expect(bool(np.all(t.is_square(S.elements))), 'S contains a non-square')
    rep.expect(bool(np.all(t.norm(S.elements) == 1)), 'N(a) ≠ 1')
    rep.expect(bool(np.all(t.trace(t.power(S.elements, 2)) == 0)), 'T(a²) ≠ 0')
    images = t.frobenius(S.elements, 1)
    positions = [int(np.nonzero(S.elements == x)[0][0]) if x in S.elements else -1 for x in images]
    rep.expect(sorted(positions) == list(range(S.size)), {'frobenius_image': positions})
    if -1 not in positions:
        moved = partition.in_x1[positions] != partition.in_x1
        rep.expect(not np.any(moved), {'frobenius_moves_part': np.nonzero(moved)[0].tolist()})
    rep.details['x1'] = partition.x1.tolist()
    rep.details['x2'] = partition.x2.tolist()
    return rep.finish()


# ----------------------------------------------------------------------
# 矩阵 B_s 与 B
# ----------------------------------------------------------------------
def kappa_s_blocks(tower: FieldTower, S: SpecialSet) -> np.ndarray:
    """B_s[i][j] = κ_s(a_i², a_j²) = #{(k, i') : T(μ^i' a_i²) = -ω^(4k+s) T(μ^-i' a_j²)}"""
    t = tower
    q, n = t.q, t.order
    steps = np.arange(t.plane_order, dtype=np.int64) * t.mu_exponent
    logs = t.log(t.power(S.elements, 2))
    c1 = t.f_code_table[t.trace_table[t.exp_table[(logs[:, None] + steps[None, :]) % n]]]
    c2 = t.f_code_table[t.trace_table[t.exp_table[(logs[:, None] - steps[None, :]) % n]]]
    A = c1[:, None, :]
    Bc = c2[None, :, :]
    both_zero = (A == 0) & (Bc == 0)
    live = (A != 0) & (Bc != 0)
    ratio = t.f_mul_tbl[t.f_neg_tbl[A], t.f_inv_tbl[Bc]]
    r = (ratio - 1) % 4
    base = (q - 1) // 4 * both_zero.sum(axis=-1)
    return np.stack([base + (live & (r == s)).sum(axis=-1) for s in range(4)]).astype(np.int64)


def assemble_B(blocks: np.ndarray) -> np.ndarray:
    """B[(s,i),(t,j)] = B_{(t-s) mod 4}[i][j] - δ"""
    n = blocks.shape[1]
    B = np.zeros((4 * n, 4 * n), dtype=np.int64)
    for s in range(4):
        for t_ in range(4):
            B[s * n:(s + 1) * n, t_ * n:(t_ + 1) * n] = blocks[(t_ - s) % 4]
    return B - np.eye(4 * n, dtype=np.int64)


def build_orbit_sum_matrices(tower: FieldTower, S: SpecialSet, model: Optional[QuadricModel] = None,
                             orbits: Optional[OrbitTable] = None, executor=None,
                             seed: Optional[int] = None) -> OrbitSumMatrix:
    """直接计数得到 B_s；给出点模型和轨道表时再用真实共线关系做可裂性 (tactical) 对照"""
    blocks = kappa_s_blocks(tower, S)
    matrices = OrbitSumMatrix(blocks, assemble_B(blocks))
    if model is not None and orbits is not None:
        matrices.tactical = verify_orbit_tactical(model, orbits, matrices, executor=executor, seed=seed)
        matrices.tactical.raise_if_failed()
    return matrices


def verify_orbit_tactical(model: QuadricModel, orbits: OrbitTable, matrices: OrbitSumMatrix,
                          executor=None, seed: Optional[int] = None) -> CheckReport:
    """每个点 y 所见的各轨道共线点数只依赖 y 的轨道，且非平面轨道之间等于 B 的元素"""
    q = model.q
    n = matrices.n
    exhaustive = q <= VERIFY_CONFIG['exhaustive_max_q']
    rng = np.random.default_rng(VERIFY_CONFIG['seed'] if seed is None else seed)
    if exhaustive:
        rows = np.arange(model.num_points)
        scope = 'exhaustive'
    else:
        picks = []
        for o in range(orbits.num_orbits):
            members = orbits.members(o)
            picks.append(members[:4])
            picks.append(rng.choice(members, min(4, len(members)), replace=False))
        rows = np.unique(np.concatenate(picks))
        scope = f"sampled(seed={VERIFY_CONFIG['seed'] if seed is None else seed})"

    rep = CheckReport('orbit_tactical', q, scope=scope, domain_size=model.num_points, error_class=NotTactical)
    counts = model.collinear_class_counts(rows, orbits.orbit_of, orbits.num_orbits, executor=executor)
    row_orbit = orbits.orbit_of[rows]

    # 矩阵下标 (s,i) ↦ 轨道编号
    index_to_orbit = np.array([orbits.keys[(s, i)] for s in range(4) for i in range(n)], dtype=np.int64)
    expected = np.full((orbits.num_orbits, orbits.num_orbits), -1, dtype=np.int64)
    expected[np.ix_(index_to_orbit, index_to_orbit)] = matrices.B + np.eye(4 * n, dtype=np.int64)

    for o in range(orbits.num_orbits):
        sel = counts[row_orbit == o]
        if len(sel) == 0:
            continue
        rep.checked += len(sel)
        varying = np.any(sel != sel[0], axis=1)
        for r in np.nonzero(varying)[0][:VERIFY_CONFIG['max_witnesses']]:
            rep.add_failure({'orbit': int(o), 'point': int(rows[row_orbit == o][r]), 'kind': 'not constant'})
        col = expected[:, o]
        known = col >= 0
        if np.any(known) and np.any(sel[0][known] != col[known]):
            rep.add_failure({'orbit': int(o), 'kind': 'differs from B',
                             'observed': sel[0][known].tolist(), 'expected': col[known].tolist()})
    off = [o for o in range(orbits.num_orbits) if o not in (orbits.pi1_orbit, orbits.pi2_orbit)]
    if off and len(rows):
        first = counts[np.argmax(np.isin(row_orbit, off))]
        rep.details['off_plane_row_sum'] = int(first[off].sum()) - 1
    return rep.finish()


def verify_orbit_sum_identities(tower: FieldTower, S: SpecialSet, partition: SignPartition,
                                matrices: OrbitSumMatrix) -> List[CheckReport]:
    q = tower.q
    blocks = matrices.blocks
    reports = []
    rep = CheckReport('b1_equals_b3', q, domain_size=blocks[1].size, error_class=IdentityViolation)
    rep.checked = blocks[1].size
    rep.add_failures({'i': int(i), 'j': int(j)} for i, j in np.argwhere(blocks[1] != blocks[3]))
    reports.append(rep.finish())

    rep = CheckReport('b0_minus_b2', q, domain_size=blocks[0].size, error_class=IdentityViolation)
    diff = blocks[0] - blocks[2]
    rep.checked = diff.size
    rep.add_failures({'i': int(i), 'j': int(j), 'lhs': int(diff[i, j]), 'rhs': int(q * partition.signs[i, j])}
                     for i, j in np.argwhere(diff != q * partition.signs))
    reports.append(rep.finish())

    rep = CheckReport('b_symmetric', q, domain_size=matrices.B.size, error_class=IdentityViolation)
    rep.checked = matrices.B.size
    rep.add_failures({'row': int(i), 'col': int(j)} for i, j in np.argwhere(matrices.B != matrices.B.T))
    reports.append(rep.finish())
    return reports


def verify_kappa_bookkeeping(tower: FieldTower, S: SpecialSet, matrices: OrbitSumMatrix,
                             engine: Optional[CharacterEngine] = None) -> CheckReport:
    """κ_s(a², b²) = κ_z(ab) + ((q-1)/4)·ε_ab，z = χ₄(-ω^s)；另查 χ₄(-1) = χ₂(2)"""
    t = tower
    engine = engine or CharacterEngine(t)
    n = S.size
    rep = CheckReport('kappa_bookkeeping', t.q, domain_size=4 * n * n, error_class=IdentityViolation)
    e_minus_one = (t.order // 2) % 4
    e_omega = t.omega_exponent % 4
    chi2_of_2 = 1 if t.log(t.element(2)) % 2 == 0 else -1
    rep.expect((1 if e_minus_one == 0 else -1) == chi2_of_2, {'chi4(-1)': e_minus_one, 'chi2(2)': chi2_of_2})

    prods = t.mul(S.elements[:, None], S.elements[None, :]).ravel()
    counts, _, both_zero = engine.kappa_counts(t.log(prods))
    for s in range(4):
        z = (e_minus_one + s * e_omega) % 4
        expected = (counts[:, z] + (t.q - 1) // 4 * both_zero).reshape(n, n)
        bad = np.argwhere(matrices.blocks[s] != expected)
        rep.checked += n * n
        rep.add_failures({'s': s, 'i': int(i), 'j': int(j)} for i, j in bad)
    return rep.finish()


# ----------------------------------------------------------------------
# H 与特征向量
# ----------------------------------------------------------------------
def build_H(matrices: OrbitSumMatrix, partition: SignPartition, q: int) -> np.ndarray:
    """H = B₀′ + Σ i^s B_s；与 [q·χ₂(2T(a_i a_j))] - I 和 qK - qK′ - I 逐项比较"""
    blocks = matrices.blocks
    n = matrices.n
    eye = np.eye(n, dtype=np.int64)
    # i^s 的实部与虚部
    re = blocks[0] - blocks[2] - eye
    im = blocks[1] - blocks[3]
    from_signs = q * partition.signs - eye
    same = partition.in_x1[:, None] == partition.in_x1[None, :]
    K = (same & ~eye.astype(bool)).astype(np.int64)
    K_prime = (~same).astype(np.int64)
    from_parts = q * K - q * K_prime - eye

    problems = []
    if np.any(im):
        problems.append({'imaginary_part': np.argwhere(im != 0)[:5].tolist()})
    if np.any(re != from_signs):
        problems.append({'vs_signs': np.argwhere(re != from_signs)[:5].tolist()})
    if np.any(re != from_parts):
        problems.append({'vs_partition': np.argwhere(re != from_parts)[:5].tolist()})
    if problems:
        raise HMismatch("H 的三种表达式不一致", witness=problems)
    return re


def partition_vector(partition: SignPartition) -> np.ndarray:
    """2v = c_X₁ - c_X₂"""
    return np.where(partition.in_x1, 1, -1).astype(np.int64)


def lift_eigenvector(v: np.ndarray, zeta_power: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """w = [ζ⁰v; ζ¹v; ζ²v; ζ³v]，ζ = i^zeta_power；返回 (实部, 虚部)"""
    v = np.asarray(v, dtype=np.int64)
    real_parts, imag_parts = [], []
    for s in range(4):
        k = (zeta_power * s) % 4
        real_parts.append({0: v, 2: -v}.get(k, np.zeros_like(v)))
        imag_parts.append({1: v, 3: -v}.get(k, np.zeros_like(v)))
    return np.concatenate(real_parts), np.concatenate(imag_parts)


def check_eigenvector(matrix: np.ndarray, w: np.ndarray, eigenvalue: int, label: str):
    residual = matrix @ w - eigenvalue * w
    if np.any(residual):
        raise LiftFailure(f"{label} 不是特征值 {eigenvalue} 的特征向量",
                          witness={'nonzero_rows': np.nonzero(residual)[0][:10].tolist()})


# ----------------------------------------------------------------------
# 组装
# ----------------------------------------------------------------------
def _orbit_union(orbits: OrbitTable, keys: List[Tuple[int, int]]) -> np.ndarray:
    wanted = np.array([orbits.keys[k] for k in keys], dtype=np.int64)
    return np.nonzero(np.isin(orbits.orbit_of, wanted))[0]


def build_tight_sets(tower: FieldTower, model: QuadricModel, orbits: OrbitTable, S: SpecialSet,
                     partition: SignPartition, matrices: OrbitSumMatrix) -> Dict[str, TightSet]:
    """T₁ = X₁×{0,1} ∪ X₂×{2,3}，T₂ 为其互换；T₁′ = X₁×{0,3} ∪ X₂×{1,2}，T₂′ 为其互换"""
    logger = logging.getLogger('TightSetLab.TightSetBuilder')
    t = tower
    q = t.q
    x = (q * q - 1) // 2
    eigenvalue = q * q - 1

    H = build_H(matrices, partition, q)
    u = partition_vector(partition)
    check_eigenvector(H, u, eigenvalue, 'v')
    w1, w2 = lift_eigenvector(u, 1)
    check_eigenvector(matrices.B, w1, eigenvalue, 'w₁')
    check_eigenvector(matrices.B, w2, eigenvalue, 'w₂')

    x1, x2 = partition.x1.tolist(), partition.x2.tolist()
    layouts = {
        'T1': ((0, 1), (2, 3)),
        'T2': ((2, 3), (0, 1)),
        'T1prime': ((0, 3), (1, 2)),
        'T2prime': ((1, 2), (0, 3)),
    }
    sets = {}
    for label, (s_for_x1, s_for_x2) in layouts.items():
        keys = sorted([(s, i) for i in x1 for s in s_for_x1] + [(s, i) for i in x2 for s in s_for_x2])
        sets[label] = TightSet(label, q, x, _orbit_union(orbits, keys), keys,
                               sign_convention=t.omega_sign, a1_index=S.a1)

    # 对应的 ±1 向量就是 w₁ ± w₂
    n = S.size
    for label, w in (('T1', w1 + w2), ('T1prime', w1 - w2)):
        plus = sorted((idx // n, idx % n) for idx in np.nonzero(w > 0)[0])
        if plus != sets[label].orbit_keys:
            raise AssemblyMismatch(f"{label} 的轨道与特征向量符号不符", witness={'eigen': plus})

    _check_assembly(model, sets, x)
    logger.info(f"✅ q={q}: 构造出 4 个 {x}-紧集，每个 {sets['T1'].size} 点")
    return sets


def _check_assembly(model: QuadricModel, sets: Dict[str, TightSet], x: int):
    N = model.num_points
    P = model.tower.plane_order
    plane = model.in_pi1 | model.in_pi2
    problems = []
    for label, ts in sets.items():
        if ts.size != x * P:
            problems.append({'set': label, 'size': ts.size, 'expected': x * P})
        if np.any(plane[ts.points]):
            problems.append({'set': label, 'meets_generators': True})
    for a, b in (('T1', 'T2'), ('T1prime', 'T2prime')):
        ma, mb = sets[a].mask(N), sets[b].mask(N)
        if np.any(ma & mb) or not np.array_equal(ma | mb | plane, np.ones(N, dtype=bool)):
            problems.append({'pair': [a, b], 'partition': False})

    def image(k: int, label: str) -> np.ndarray:
        return np.sort(model.permutation(IsometryMap('scale', k))[sets[label].points])

    if not np.array_equal(image(2, 'T1'), sets['T2'].points):
        problems.append({'map': '(x, ω²y)', 'T1 -> T2': False})
    if not np.array_equal(image(1, 'T1prime'), sets['T1'].points):
        problems.append({'map': '(x, ωy)', 'T1prime -> T1': False})
    if not np.array_equal(image(1, 'T2prime'), sets['T2'].points):
        problems.append({'map': '(x, ωy)', 'T2prime -> T2': False})
    if problems:
        raise AssemblyMismatch("紧集组装检查失败", witness=problems)
