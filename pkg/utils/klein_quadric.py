# -*- coding: utf-8 -*-
"""
Q⁺(5,q) 的模型: V = E², Q((u,v)) = T(uv)

点以规范代表元 (u,v) 存放：u ≠ 0 时 N(u) = 1，否则 N(v) = 1。
由于 q ≢ 1 (mod 3)，F* 上立方映射是双射，规范化只需一次 F*-缩放。
点编号按 (u 下标, v 下标) 排序。
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import VERIFY_CONFIG
from utils.check_report import CheckReport
from utils.errors import FrameFailure, InvalidQ, ModelViolation, NotOnQuadric, OrbitMismatch
from utils.field_tower import FieldTower


@dataclass(frozen=True)
class QuadricPoint:
    u: int
    v: int
    canonical: bool = True

    def to_list(self) -> List[int]:
        return [int(self.u), int(self.v)]


@dataclass(frozen=True)
class IsometryMap:
    """c: (μu, μ⁻¹v)  z: (u, ω⁴v)  e: (u^q, v^q)  o: (v, ωu)  scale: (u, ω^k v)"""
    tag: str
    k: int = 1

    def __post_init__(self):
        if self.tag not in ('c', 'z', 'e', 'o', 'scale'):
            raise ValueError(f"未知的映射: {self.tag}")

    @property
    def name(self) -> str:
        return f"scale_{self.k}" if self.tag == 'scale' else self.tag


@dataclass
class OrbitTable:
    group: str                       # 'c_only' | 'full_G'
    orbit_of: np.ndarray             # 点 → 轨道编号
    representatives: np.ndarray      # 每个轨道的最小点编号
    sizes: np.ndarray
    keys: Dict[Tuple[int, int], int] = field(default_factory=dict)   # (s, a 在 S 中的位置) → 轨道
    pi1_orbit: Optional[int] = None
    pi2_orbit: Optional[int] = None

    @property
    def num_orbits(self) -> int:
        return len(self.sizes)

    def members(self, orbit: int) -> np.ndarray:
        return np.nonzero(self.orbit_of == orbit)[0]


@dataclass
class PluckerFrame:
    """x (E² 的 F-坐标, 行向量) ↦ x·M 为 Plücker 坐标 (p01, p02, p03, p23, p31, p12)"""
    basis: np.ndarray        # 6×6，行依次为 e1, e2, e3, f1, f2, f3
    M: np.ndarray            # basis 的逆
    gram: np.ndarray         # B 在 (β ⊕ 0, 0 ⊕ β) 上的 Gram 矩阵
    pairs: int = 3
    swapped: bool = False

    def to_dict(self) -> dict:
        return {'basis': self.basis.tolist(), 'M': self.M.tolist(), 'swapped': self.swapped}


class QuadricModel:
    """Q⁺(5,q) 的全部点与基本运算 (构造后只读)"""

    def __init__(self, tower: FieldTower):
        self.logger = logging.getLogger('TightSetLab.QuadricModel')
        if not tower.cube_map_bijective:
            raise InvalidQ(f"q={tower.q} ≡ 1 (mod 3)，点的规范化不唯一", witness=tower.q)
        self.tower = tower
        t = tower
        self.q = t.q

        # u ∈ ⟨μ⟩，v ∈ u⁻¹·ker T；以及 (0, μ^i)
        mu_pow = t.exp_table[(np.arange(t.plane_order, dtype=np.int64) * t.mu_exponent) % t.order]
        kernel = np.nonzero(t.trace_table == 0)[0]
        us = np.repeat(mu_pow, len(kernel))
        vs = t.mul(t.inv(mu_pow)[:, None], kernel[None, :]).ravel()
        us = np.concatenate([us, np.zeros(t.plane_order, dtype=np.int64)])
        vs = np.concatenate([vs, mu_pow])
        keys = us * t.size + vs
        order = np.argsort(keys, kind='stable')
        self.u = us[order]
        self.v = vs[order]
        self.keys = keys[order]
        self.num_points = len(self.keys)

        self.in_pi1 = self.v == 0
        self.in_pi2 = self.u == 0
        self.f_coords = np.hstack([t.f_coordinates(self.u), t.f_coordinates(self.v)])

        # F_p 上的双线性形 B_λ(X, Y) = X Ω_λ Yᵀ，λ 取遍 F 的一组 F_p-基
        m = t.big_degree
        self.fp_digits = np.hstack([t.digits(self.u), t.digits(self.v)]).astype(np.float64)
        ij = np.arange(m)[:, None] + np.arange(m)[None, :]
        self.omegas = []
        for lam in t.subfield_fp_basis():
            gamma = t.fp_trace_table[t.mul(int(lam), t.exp_table[ij % t.order])].astype(np.float64)
            omega = np.zeros((2 * m, 2 * m))
            omega[:m, m:] = gamma
            omega[m:, :m] = gamma
            self.omegas.append(omega)

        self._perm_cache: Dict[IsometryMap, np.ndarray] = {}
        self.logger.debug(f"Q⁺(5,{self.q}) 共 {self.num_points} 个点")

    # ------------------------------------------------------------------
    # 点编号
    # ------------------------------------------------------------------
    def canonicalize(self, u, v) -> Tuple[np.ndarray, np.ndarray]:
        t = self.tower
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        lu, lv = t.log_table[u], t.log_table[v]
        if np.any((lu < 0) & (lv < 0)):
            raise NotOnQuadric("零向量不是射影点")
        ref = np.where(lu >= 0, lu, lv)
        lam = t.exp_table[t.canonical_scalar_exponent(ref) % t.order]
        return t.mul(lam, u), t.mul(lam, v)

    def point_ids(self, u, v) -> np.ndarray:
        cu, cv = self.canonicalize(u, v)
        key = np.asarray(cu * self.tower.size + cv, dtype=np.int64)
        idx = np.searchsorted(self.keys, key)
        idx_c = np.minimum(idx, self.num_points - 1)
        missing = self.keys[idx_c] != key
        if np.any(missing):
            bad = np.ravel(key)[np.ravel(missing)][0]
            raise NotOnQuadric("向量不在二次曲面上", witness={'u': int(bad // self.tower.size),
                                                              'v': int(bad % self.tower.size)})
        return idx_c

    def point_id(self, u: int, v: int) -> int:
        return int(self.point_ids(np.array([u]), np.array([v]))[0])

    def point(self, i: int) -> QuadricPoint:
        return QuadricPoint(int(self.u[i]), int(self.v[i]))

    def quadratic_form(self, u, v):
        return self.tower.trace(self.tower.mul(u, v))

    # ------------------------------------------------------------------
    # 共线
    # ------------------------------------------------------------------
    def polar_form(self, u1, v1, u2, v2):
        t = self.tower
        return t.add(t.trace(t.mul(u1, v2)), t.trace(t.mul(v1, u2)))

    def is_collinear(self, p1: QuadricPoint, p2: QuadricPoint) -> bool:
        return self.polar_form(p1.u, p1.v, p2.u, p2.v) == 0

    def _collinear_block(self, X: np.ndarray, YO: List[np.ndarray]) -> np.ndarray:
        p = self.tower.p
        ok = None
        for yo in YO:
            hit = np.mod(X @ yo.T, p) == 0
            ok = hit if ok is None else ok & hit
        return ok

    def _row_chunks(self, n_rows: int, n_cols: int) -> List[slice]:
        rows = max(1, min(VERIFY_CONFIG['chunk_rows'], (1 << 24) // max(1, n_cols)))
        return [slice(s, min(s + rows, n_rows)) for s in range(0, n_rows, rows)]

    def collinear_matrix(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """布尔矩阵 [rows[i] 与 cols[j] 共线]，只用于小规模"""
        Y = self.fp_digits[cols]
        YO = [np.mod(Y @ om, self.tower.p) for om in self.omegas]
        return self._collinear_block(self.fp_digits[rows], YO)

    def collinear_counts(self, rows: np.ndarray, cols: np.ndarray, executor=None) -> np.ndarray:
        """对每个 rows[i] 统计 cols 中与之共线的点数 (含自身)"""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if len(cols) == 0:
            return np.zeros(len(rows), dtype=np.int64)
        Y = self.fp_digits[cols]
        YO = [np.mod(Y @ om, self.tower.p) for om in self.omegas]
        X = self.fp_digits[rows]

        def work(chunk: slice) -> np.ndarray:
            return self._collinear_block(X[chunk], YO).sum(axis=1)

        chunks = self._row_chunks(len(rows), len(cols))
        mapper = executor.map if executor is not None else map
        parts = list(mapper(work, chunks))
        return np.concatenate(parts).astype(np.int64) if parts else np.zeros(0, dtype=np.int64)

    def collinear_class_counts(self, rows: np.ndarray, classes: np.ndarray, n_classes: int,
                               executor=None) -> np.ndarray:
        """(len(rows), n_classes)：每个类中与 rows[i] 共线的点数 (含自身)"""
        rows = np.asarray(rows, dtype=np.int64)
        onehot = np.zeros((self.num_points, n_classes), dtype=np.float32)
        onehot[np.arange(self.num_points), classes] = 1.0
        YO = [np.mod(self.fp_digits @ om, self.tower.p) for om in self.omegas]
        X = self.fp_digits[rows]

        def work(chunk: slice) -> np.ndarray:
            return self._collinear_block(X[chunk], YO).astype(np.float32) @ onehot

        mapper = executor.map if executor is not None else map
        parts = list(mapper(work, self._row_chunks(len(rows), self.num_points)))
        if not parts:
            return np.zeros((0, n_classes), dtype=np.int64)
        return np.rint(np.vstack(parts)).astype(np.int64)

    def collinear_with(self, point: int) -> np.ndarray:
        """p^⊥ ∩ Q⁺(5,q) 的点编号"""
        row = self.collinear_matrix(np.array([point]), np.arange(self.num_points))[0]
        return np.nonzero(row)[0]

    # ------------------------------------------------------------------
    # 等距 / 相似映射
    # ------------------------------------------------------------------
    def map_vectors(self, g: IsometryMap, u, v) -> Tuple[np.ndarray, np.ndarray]:
        t = self.tower
        if g.tag == 'c':
            return t.mul(t.mu, u), t.mul(t.inv(t.mu), v)
        if g.tag == 'z':
            return u, t.mul(t.power(t.omega, 4), v)
        if g.tag == 'e':
            return t.frobenius(u, 1), t.frobenius(v, 1)
        if g.tag == 'o':
            return v, t.mul(t.omega, u)
        return u, t.mul(t.power(t.omega, g.k), v)

    def permutation(self, g: IsometryMap) -> np.ndarray:
        """g 在点编号上诱导的置换"""
        if g not in self._perm_cache:
            u2, v2 = self.map_vectors(g, self.u, self.v)
            perm = self.point_ids(u2, v2)
            if len(np.unique(perm)) != self.num_points:
                raise ModelViolation(f"{g.name} 不是点集上的置换")
            self._perm_cache[g] = perm
        return self._perm_cache[g]

    def apply_isometry(self, g: IsometryMap, p: QuadricPoint) -> QuadricPoint:
        u2, v2 = self.map_vectors(g, np.array([p.u]), np.array([p.v]))
        cu, cv = self.canonicalize(u2, v2)
        return QuadricPoint(int(cu[0]), int(cv[0]))

    def orbit_representative_id(self, s: int, a: int) -> int:
        """(1, ω^s a²) 的点编号"""
        t = self.tower
        return self.point_id(1, t.mul(t.power(t.omega, s), t.power(a, 2)))


def enumerate_points(tower: FieldTower) -> List[QuadricPoint]:
    model = QuadricModel(tower)
    return [model.point(i) for i in range(model.num_points)]


def orbits_from_permutations(num_points: int, generators: Sequence[np.ndarray]) -> np.ndarray:
    """置换群轨道：最小标号传播 + 指针跳跃，返回每点所在轨道的最小点编号"""
    labels = np.arange(num_points, dtype=np.int64)
    while True:
        new = labels.copy()
        for g in generators:
            np.minimum(new, labels[g], out=new)
            new[g] = np.minimum(new[g], labels)
        while True:
            jumped = new[new]
            if np.array_equal(jumped, new):
                break
            new = jumped
        if np.array_equal(new, labels):
            return labels
        labels = new


def compute_orbits(model: QuadricModel, group: str = 'full_G') -> OrbitTable:
    t = model.tower
    q, P = t.q, t.plane_order
    gens = [model.permutation(IsometryMap('c'))]
    if group == 'full_G':
        if q % 4 != 1:
            raise InvalidQ(f"q={q} ≢ 1 (mod 4)，z 没有定义", witness=q)
        gens.append(model.permutation(IsometryMap('z')))
    elif group != 'c_only':
        raise ValueError(f"未知的群: {group}")

    labels = orbits_from_permutations(model.num_points, gens)
    reps, orbit_of, sizes = np.unique(labels, return_inverse=True, return_counts=True)
    table = OrbitTable(group, orbit_of.astype(np.int64), reps, sizes)

    if group == 'c_only':
        if table.num_orbits != q * q + 1 or np.any(sizes != P):
            raise OrbitMismatch("⟨c⟩ 的轨道数或大小不符",
                                witness={'orbits': table.num_orbits, 'sizes': sorted(set(sizes.tolist()))})
        return table

    table.pi1_orbit = int(orbit_of[np.argmax(model.in_pi1)])
    table.pi2_orbit = int(orbit_of[np.argmax(model.in_pi2)])
    S = t.special_elements()
    for i, a in enumerate(S):
        for s in range(4):
            table.keys[(s, i)] = int(orbit_of[model.orbit_representative_id(s, int(a))])

    expected_big = (q - 1) // 4 * P
    problems = []
    if table.num_orbits != 2 + 4 * (q + 1):
        problems.append({'orbits': table.num_orbits, 'expected': 2 + 4 * (q + 1)})
    if sizes[table.pi1_orbit] != P or sizes[table.pi2_orbit] != P:
        problems.append({'plane_orbit_sizes': [int(sizes[table.pi1_orbit]), int(sizes[table.pi2_orbit])]})
    keyed = set(table.keys.values())
    if len(keyed) != 4 * (q + 1) or keyed & {table.pi1_orbit, table.pi2_orbit}:
        problems.append({'distinct_keyed_orbits': len(keyed)})
    others = [o for o in range(table.num_orbits) if o not in (table.pi1_orbit, table.pi2_orbit)]
    if any(sizes[o] != expected_big for o in others):
        problems.append({'orbit_sizes': sorted(set(int(sizes[o]) for o in others)), 'expected': expected_big})
    if problems:
        raise OrbitMismatch("G 轨道与预期不符", witness=problems)
    return table


def perp_sizes(model: QuadricModel, points: Optional[np.ndarray] = None, executor=None) -> np.ndarray:
    rows = np.arange(model.num_points) if points is None else np.asarray(points)
    return model.collinear_counts(rows, np.arange(model.num_points), executor=executor)


def verify_quadric_model(model: QuadricModel, executor=None, seed: Optional[int] = None) -> List[CheckReport]:
    """点数、|p^⊥| 常数、⟨c⟩ 半正则、规范化幂等、映射的基本性质、两种共线判定一致"""
    t = model.tower
    q, P = t.q, t.plane_order
    rng = np.random.default_rng(VERIFY_CONFIG['seed'] if seed is None else seed)
    exhaustive = q <= VERIFY_CONFIG['exhaustive_max_q']
    reports = []

    rep = CheckReport('point_enumeration', q, domain_size=model.num_points, error_class=ModelViolation)
    rep.expect(model.num_points == (q * q + 1) * P, {'points': model.num_points})
    rep.expect(len(np.unique(model.keys)) == model.num_points, 'duplicate points')
    rep.expect(bool(np.all(model.quadratic_form(model.u, model.v) == 0)), 'point off quadric')
    cu, cv = model.canonicalize(model.u, model.v)
    rep.expect(bool(np.all(cu == model.u) and np.all(cv == model.v)), 'canonicalize not idempotent')
    rep.expect(int(model.in_pi1.sum()) == P and int(model.in_pi2.sum()) == P, 'generator sizes')
    if t.size <= 1000:
        xs = np.arange(t.size, dtype=np.int64)
        zeros = int(np.count_nonzero(t.trace(t.mul(xs[:, None], xs[None, :])) == 0)) - 1
        rep.expect(zeros == (q - 1) * model.num_points, {'brute_force_vectors': zeros})
        rep.details['brute_force_points'] = zeros // (q - 1)
    rep.details['points'] = model.num_points
    reports.append(rep.finish())

    rep = CheckReport('perp_constant', q, error_class=ModelViolation)
    if exhaustive:
        sample = np.arange(model.num_points)
    else:
        sample = np.sort(rng.choice(model.num_points, 64, replace=False))
        rep.scope = 'sampled'
    sizes = perp_sizes(model, sample, executor=executor)
    observed = sorted(set(sizes.tolist()))
    rep.domain_size = model.num_points
    rep.checked = len(sample)
    rep.details['observed'] = observed
    rep.details['formula'] = q ** 3 + 2 * q * q + q + 1
    rep.add_failures({'point': int(p), 'size': int(s)}
                     for p, s in zip(sample, sizes) if s != q ** 3 + 2 * q * q + q + 1)
    reports.append(rep.finish())

    rep = CheckReport('c_semiregular', q, domain_size=P - 1, error_class=ModelViolation)
    c = model.permutation(IsometryMap('c'))
    ids = np.arange(model.num_points)
    power = c.copy()
    for k in range(1, P):
        rep.expect(not np.any(power == ids), {'power': k})
        power = c[power]
    rep.expect(bool(np.array_equal(power, ids)), 'c^(q²+q+1) ≠ id')
    reports.append(rep.finish())

    rep = CheckReport('isometry_basics', q, error_class=ModelViolation)
    z = model.permutation(IsometryMap('z'))
    o = model.permutation(IsometryMap('o'))
    plane = model.in_pi1 | model.in_pi2
    rep.expect(bool(np.array_equal(z[plane], ids[plane])), 'z moves a point of π₁ ∪ π₂')
    rep.expect(bool(np.all(model.in_pi2[o[model.in_pi1]])), 'o does not map π₁ to π₂')
    rep.expect(bool(np.array_equal(o[o], ids)), 'o∘o ≠ id on points')
    rep.expect(bool(np.array_equal(c[z], z[c])), 'c and z do not commute')
    reports.append(rep.finish())

    rep = CheckReport('collinearity_agreement', q, scope=f"sampled(seed={VERIFY_CONFIG['seed'] if seed is None else seed})",
                      domain_size=model.num_points ** 2, error_class=ModelViolation)
    n = VERIFY_CONFIG['collinearity_pairs']
    a = rng.integers(0, model.num_points, n)
    b = rng.integers(0, model.num_points, n)
    direct = model.polar_form(model.u[a], model.v[a], model.u[b], model.v[b]) == 0
    Xa, Xb = model.fp_digits[a], model.fp_digits[b]
    via_digits = np.ones(n, dtype=bool)
    for om in model.omegas:
        via_digits &= np.mod(np.einsum('ij,jk,ik->i', Xa, om, Xb), t.p) == 0
    rep.checked = n
    rep.add_failures({'p1': int(x), 'p2': int(y)} for x, y in zip(a[direct != via_digits], b[direct != via_digits]))
    reports.append(rep.finish())
    return reports


# ----------------------------------------------------------------------
# Plücker 标架
# ----------------------------------------------------------------------
def _gram_matrix(t: FieldTower) -> np.ndarray:
    G = t.f_code_table[t.trace(t.mul(t.basis[:, None], t.basis[None, :]))]
    gram = np.zeros((6, 6), dtype=np.int64)
    gram[:3, 3:] = G
    gram[3:, :3] = G
    return gram


def _bilinear(t: FieldTower, gram: np.ndarray, x: np.ndarray, y: np.ndarray) -> int:
    return int(t.f_matmul(t.f_matmul(x[None, :], gram), y[:, None])[0, 0])


def _quadratic(t: FieldTower, gram: np.ndarray, x: np.ndarray) -> int:
    return int(t.f_mul_tbl[t.f_half, _bilinear(t, gram, x, x)])


def _first_singular(t: FieldTower, gram: np.ndarray, W: np.ndarray) -> np.ndarray:
    """按系数字典序找 span(W) 中第一个非零奇异向量"""
    for combo in itertools.product(range(t.q), repeat=W.shape[0]):
        coeffs = combo[::-1]
        if not any(coeffs):
            continue
        x = t.f_matmul(np.array(coeffs, dtype=np.int64)[None, :], W)[0]
        if not np.any(x):
            continue
        if _quadratic(t, gram, x) == 0:
            return x
    raise FrameFailure("子空间中没有奇异向量", witness=W.tolist())


def _field_quadratic(t: FieldTower, codes: np.ndarray) -> np.ndarray:
    """直接在 E² 上计算 Q：坐标 → (u, v) → T(uv)"""
    vals = t.f_to_field(codes)
    u = np.zeros(len(codes), dtype=np.int64)
    v = np.zeros(len(codes), dtype=np.int64)
    for k in range(3):
        u = t.add(u, t.mul(vals[:, k], t.basis[k]))
        v = t.add(v, t.mul(vals[:, 3 + k], t.basis[k]))
    return t.f_code_table[t.trace(t.mul(u, v))]


def _standard_quadratic(t: FieldTower, y: np.ndarray) -> np.ndarray:
    mt, at = t.f_mul_tbl, t.f_add_tbl
    return at[at[mt[y[:, 0], y[:, 3]], mt[y[:, 1], y[:, 4]]], mt[y[:, 2], y[:, 5]]]


def find_plucker_frame(tower: FieldTower, seed: Optional[int] = None) -> PluckerFrame:
    """逐次抽取双曲对，得到把 Q 变成 p01p23 + p02p31 + p03p12 的坐标变换"""
    logger = logging.getLogger('TightSetLab.PluckerFrame')
    t = tower
    gram = _gram_matrix(t)
    W = np.eye(6, dtype=np.int64)
    es, fs = [], []
    for _ in range(3):
        e = _first_singular(t, gram, W)
        mate = None
        for w in W:
            b = _bilinear(t, gram, e, w)
            if b:
                mate = t.f_mul_tbl[t.f_inv_tbl[b], w]
                break
        if mate is None:
            raise FrameFailure("奇异向量与整个子空间正交，形式退化", witness=e.tolist())
        qf = _quadratic(t, gram, mate)
        f = t.f_sub_tbl[mate, t.f_mul_tbl[qf, e]]
        es.append(e)
        fs.append(f)
        projected = []
        for w in W:
            bf = _bilinear(t, gram, w, f)
            be = _bilinear(t, gram, w, e)
            projected.append(t.f_sub_tbl[t.f_sub_tbl[w, t.f_mul_tbl[bf, e]], t.f_mul_tbl[be, f]])
        R, pivots = t.f_rref(np.array(projected, dtype=np.int64))
        W = R[:len(pivots)]
        if len(pivots) != 6 - 2 * len(es):
            raise FrameFailure("正交补维数不对", witness={'rank': len(pivots), 'pairs': len(es)})

    basis = np.array(es + fs, dtype=np.int64)
    # π₁ 的像要落在 star((1,0,0,0)) 上，即 e 张成 π₁ = {(x, 0)}
    swapped = False
    if np.any(basis[:3, 3:]) or np.any(basis[3:, :3]):
        if not np.any(basis[:3, :3]) and not np.any(basis[3:, 3:]):
            basis = np.vstack([basis[3:], basis[:3]])
            swapped = True
        else:
            raise FrameFailure("双曲基没有把两族生成元分开", witness=basis.tolist())
    try:
        M = t.f_inverse(basis)
    except ZeroDivisionError:
        raise FrameFailure("标架矩阵奇异", witness=basis.tolist())

    frame = PluckerFrame(basis, M, gram, pairs=len(es), swapped=swapped)
    report = verify_plucker_frame(t, frame, seed=seed)
    report.raise_if_failed()
    logger.debug(f"Plücker 标架: {frame.basis.tolist()}")
    return frame


def verify_plucker_frame(tower: FieldTower, frame: PluckerFrame, seed: Optional[int] = None) -> CheckReport:
    t = tower
    rep = CheckReport('plucker_frame', t.q, error_class=FrameFailure)
    rng = np.random.default_rng(VERIFY_CONFIG['seed'] if seed is None else seed)
    n = VERIFY_CONFIG['frame_random_vectors']
    eye = np.eye(6, dtype=np.int64)
    pair_sums = np.array([t.f_add_tbl[eye[i], eye[j]] for i in range(6) for j in range(i + 1, 6)])
    vectors = np.vstack([eye, pair_sums, rng.integers(0, t.q, (n, 6))])
    lhs = _field_quadratic(t, vectors)
    rhs = _standard_quadratic(t, t.f_matmul(vectors, frame.M))
    rep.checked = len(vectors)
    rep.add_failures({'x': v.tolist()} for v in vectors[lhs != rhs])
    rep.expect(bool(np.array_equal(t.f_matmul(frame.basis, frame.M), eye)), 'M⁻¹M ≠ I')
    rep.expect(frame.pairs == 3, {'pairs': frame.pairs})
    rep.details['swapped'] = frame.swapped
    return rep.finish()
