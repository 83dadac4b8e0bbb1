# -*- coding: utf-8 -*-
"""
PG(3,q)：点、平面、直线 (Plücker 坐标)、线束、展开 (spread)，以及 Klein 对应

所有坐标都是 F 码。点与平面都以首个非零坐标为 1 的 4 维向量规范化，
平面编号等于其对偶向量作为点的编号。直线以 2×4 行最简形枚举，
按 Plücker 键 (q 进制整数) 查表。
Plücker 次序 (p01, p02, p03, p23, p31, p12)，Klein 形式 p01p23 + p02p31 + p03p12。
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np

from config import VERIFY_CONFIG
from utils.check_report import CheckReport
from utils.errors import BadTransform, ModelViolation, NotIncident, NotOnQuadric
from utils.field_tower import FieldTower
from utils.klein_quadric import PluckerFrame, QuadricModel, QuadricPoint

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))


@dataclass
class LineClass:
    label: str
    q: int
    parameter_x: int
    lines: np.ndarray

    @property
    def size(self) -> int:
        return len(self.lines)

    def mask(self, num_lines: int) -> np.ndarray:
        m = np.zeros(num_lines, dtype=bool)
        m[self.lines] = True
        return m

    def to_dict(self) -> dict:
        return {'label': self.label, 'q': self.q, 'parameter_x': self.parameter_x,
                'lines': self.lines.tolist()}


@dataclass
class Spread:
    lines: np.ndarray
    transform: Optional[np.ndarray] = None


class Pg3Scene:
    """PG(3,q) 的完整枚举与关联表 (构造后只读)"""

    def __init__(self, tower: FieldTower, frame: Optional[PluckerFrame] = None):
        self.logger = logging.getLogger('TightSetLab.Pg3Scene')
        self.tower = tower
        self.frame = frame
        self.q = tower.q
        q = self.q

        points = self._enumerate_points()
        keys = self._keys(points)
        order = np.argsort(keys)
        self.points = points[order]
        self.point_keys = keys[order]
        self.num_points = len(self.points)
        if np.any(np.diff(self.point_keys) <= 0):
            raise ModelViolation("点的枚举不是严格递增的")

        r1, r2 = self._enumerate_rref_lines()
        self.line_rows = np.stack([r1, r2], axis=1)
        self.num_lines = len(r1)

        lam = np.arange(q, dtype=np.int64)
        mt, at = tower.f_mul_tbl, tower.f_add_tbl
        combos = at[r1[:, None, :], mt[lam[None, :, None], r2[:, None, :]]]
        line_vecs = np.concatenate([combos, r2[:, None, :]], axis=1)
        self.line_points = self.point_ids(line_vecs.reshape(-1, 4)).reshape(self.num_lines, q + 1)

        self.plucker = self.canonicalize(self.plucker_coordinates(r1, r2))
        keys = self._keys(self.plucker)
        self._plucker_order = np.argsort(keys)
        self._plucker_sorted = keys[self._plucker_order]
        if np.any(np.diff(self._plucker_sorted) == 0):
            raise ModelViolation("两条直线的 Plücker 键相同")

        self.line_planes = self._line_planes(r1, r2)
        self.point_lines = self._invert(self.line_points, self.num_points)
        self.plane_lines = self._invert(self.line_planes, self.num_points)
        self.logger.debug(f"PG(3,{q}): {self.num_points} 点, {self.num_lines} 直线")

    # ------------------------------------------------------------------
    # 枚举
    # ------------------------------------------------------------------
    def _enumerate_points(self) -> np.ndarray:
        q = self.q
        blocks = []
        for lead in range(4):
            free = 3 - lead
            tails = np.array(list(itertools.product(range(q), repeat=free)), dtype=np.int64).reshape(q ** free, free)
            block = np.zeros((len(tails), 4), dtype=np.int64)
            block[:, lead] = 1
            block[:, lead + 1:] = tails
            blocks.append(block)
        return np.vstack(blocks)

    def _enumerate_rref_lines(self) -> Tuple[np.ndarray, np.ndarray]:
        q = self.q
        rows1, rows2 = [], []
        for a, b in itertools.combinations(range(4), 2):
            free1 = [j for j in range(a + 1, 4) if j != b]
            free2 = list(range(b + 1, 4))
            for vals in itertools.product(range(q), repeat=len(free1) + len(free2)):
                r1 = [0, 0, 0, 0]
                r2 = [0, 0, 0, 0]
                r1[a] = 1
                r2[b] = 1
                for k, j in enumerate(free1):
                    r1[j] = vals[k]
                for k, j in enumerate(free2):
                    r2[j] = vals[len(free1) + k]
                rows1.append(r1)
                rows2.append(r2)
        return np.array(rows1, dtype=np.int64), np.array(rows2, dtype=np.int64)

    def _line_planes(self, r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
        """行空间的零化子：对两个自由列 f 取 n_f (n_f[f]=1, n_f[a]=-R1[f], n_f[b]=-R2[f])"""
        t = self.tower
        q = self.q
        L = len(r1)
        a = np.argmax(r1 != 0, axis=1)
        b = np.argmax(r2 != 0, axis=1)
        cols = np.tile(np.arange(4), (L, 1))
        free_mask = (cols != a[:, None]) & (cols != b[:, None])
        free = cols[free_mask].reshape(L, 2)
        rows = np.arange(L)
        normals = []
        for k in range(2):
            f = free[:, k]
            n = np.zeros((L, 4), dtype=np.int64)
            n[rows, f] = 1
            n[rows, a] = t.f_neg_tbl[r1[rows, f]]
            n[rows, b] = t.f_neg_tbl[r2[rows, f]]
            normals.append(n)
        n1, n2 = normals
        lam = np.arange(q, dtype=np.int64)
        combos = t.f_add_tbl[n1[:, None, :], t.f_mul_tbl[lam[None, :, None], n2[:, None, :]]]
        vecs = np.concatenate([combos, n2[:, None, :]], axis=1)
        return self.point_ids(vecs.reshape(-1, 4)).reshape(L, q + 1)

    @staticmethod
    def _invert(incidence: np.ndarray, n_targets: int) -> np.ndarray:
        """直线 → 点 (或平面) 的关联表倒置成 点 → 直线"""
        flat = incidence.ravel()
        order = np.argsort(flat, kind='stable')
        per = len(flat) // n_targets
        if np.any(np.bincount(flat, minlength=n_targets) != per):
            raise ModelViolation("关联表的度数不均匀")
        return (order // incidence.shape[1]).reshape(n_targets, per)

    # ------------------------------------------------------------------
    # 规范化与查表
    # ------------------------------------------------------------------
    def _keys(self, vecs: np.ndarray) -> np.ndarray:
        k = vecs.shape[-1]
        weights = self.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
        return vecs @ weights

    def canonicalize(self, vecs: np.ndarray) -> np.ndarray:
        t = self.tower
        vecs = np.asarray(vecs, dtype=np.int64)
        nonzero = vecs != 0
        if not np.all(nonzero.any(axis=-1)):
            raise ModelViolation("零向量不是射影点")
        lead = np.argmax(nonzero, axis=-1)
        lead_val = np.take_along_axis(vecs, lead[..., None], axis=-1)
        return t.f_mul_tbl[t.f_inv_tbl[lead_val], vecs]

    def point_ids(self, vecs: np.ndarray) -> np.ndarray:
        keys = self._keys(self.canonicalize(vecs))
        return np.searchsorted(self.point_keys, keys)

    def point_id(self, vec) -> int:
        return int(self.point_ids(np.asarray(vec, dtype=np.int64)[None, :])[0])

    def plucker_coordinates(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        mt, st = self.tower.f_mul_tbl, self.tower.f_sub_tbl
        cols = [st[mt[x[:, i], y[:, j]], mt[x[:, j], y[:, i]]] for i, j in PLUCKER_PAIRS]
        return np.stack(cols, axis=1)

    def lookup_plucker(self, pl: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(直线编号, 是否找到)；找不到的位置编号无意义"""
        keys = self._keys(self.canonicalize(pl))
        pos = np.searchsorted(self._plucker_sorted, keys)
        pos_c = np.minimum(pos, self.num_lines - 1)
        return self._plucker_order[pos_c], self._plucker_sorted[pos_c] == keys

    def line_ids_from_plucker(self, pl: np.ndarray) -> np.ndarray:
        ids, found = self.lookup_plucker(pl)
        if not np.all(found):
            raise NotOnQuadric("Plücker 向量不对应 PG(3,q) 中的直线")
        return ids

    def line_ids_from_spans(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        pl = self.plucker_coordinates(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
        if not np.all(pl.any(axis=1)):
            raise ModelViolation("张成向量线性相关")
        return self.line_ids_from_plucker(pl)

    # ------------------------------------------------------------------
    # 关联
    # ------------------------------------------------------------------
    def dot(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        t = self.tower
        acc = np.zeros(np.broadcast(x[..., 0], y[..., 0]).shape, dtype=np.int64)
        for k in range(4):
            acc = t.f_add_tbl[acc, t.f_mul_tbl[x[..., k], y[..., k]]]
        return acc

    def incident(self, point: int, plane: int) -> bool:
        return int(self.dot(self.points[point], self.points[plane])) == 0

    @cached_property
    def point_planes(self) -> np.ndarray:
        """每个点所在的 q²+q+1 个平面；每个关联点-平面对恰被其线束中的 q+1 条直线各数一次"""
        q = self.q
        pairs = (self.line_points[:, :, None] * self.num_points + self.line_planes[:, None, :]).ravel()
        pairs = np.sort(pairs)[::q + 1]
        return (pairs % self.num_points).reshape(self.num_points, q * q + q + 1)

    @cached_property
    def plane_points(self) -> np.ndarray:
        q = self.q
        pairs = (self.line_planes[:, None, :] * self.num_points + self.line_points[:, :, None]).ravel()
        pairs = np.sort(pairs)[::q + 1]
        return (pairs % self.num_points).reshape(self.num_points, q * q + q + 1)

    def star(self, point: int) -> np.ndarray:
        return self.point_lines[point]

    def lines_in_plane(self, plane: int) -> np.ndarray:
        return self.plane_lines[plane]

    def pencil(self, point: int, plane: int) -> np.ndarray:
        if not self.incident(point, plane):
            raise NotIncident(f"点 {point} 不在平面 {plane} 上", witness={'point': point, 'plane': plane})
        return np.intersect1d(self.point_lines[point], self.plane_lines[plane])

    def common_point(self, l1: np.ndarray, l2: np.ndarray) -> np.ndarray:
        """两批直线的交点 (没有交点时为 -1)"""
        a = self.line_points[l1]
        b = self.line_points[l2]
        eq = a[:, :, None] == b[:, None, :]
        hit = eq.any(axis=2)
        return np.where(hit.any(axis=1), a[np.arange(len(a)), np.argmax(hit, axis=1)], -1)

    def lines_meet(self, l1: np.ndarray, l2: np.ndarray) -> np.ndarray:
        return self.common_point(l1, l2) >= 0

    def to_dict(self) -> dict:
        return {
            'q': self.q,
            'points': self.num_points,
            'lines': self.num_lines,
            'point_order': 'leading-one, lexicographic',
            'line_order': 'rref pivot pattern, then free entries lexicographic',
            'plucker_order': ['p01', 'p02', 'p03', 'p23', 'p31', 'p12'],
            'spread_extension': 't^2 - omega',
        }


def build_scene(tower: FieldTower, frame: Optional[PluckerFrame] = None) -> Pg3Scene:
    return Pg3Scene(tower, frame)


def verify_scene(scene: Pg3Scene) -> CheckReport:
    t = scene.tower
    q = scene.q
    rep = CheckReport('pg3_scene', q, domain_size=scene.num_lines, error_class=ModelViolation)
    rep.expect(scene.num_points == (q + 1) * (q * q + 1), {'points': scene.num_points})
    rep.expect(scene.num_lines == (q * q + 1) * (q * q + q + 1), {'lines': scene.num_lines})
    rep.expect(all(len(np.unique(row)) == q + 1 for row in scene.line_points), 'line with repeated points')
    rep.expect(all(len(np.unique(row)) == q + 1 for row in scene.line_planes), 'line with repeated planes')
    rep.expect(scene.point_lines.shape[1] == q * q + q + 1, {'lines_per_point': scene.point_lines.shape[1]})
    pl = scene.plucker
    mt, at = t.f_mul_tbl, t.f_add_tbl
    klein = at[at[mt[pl[:, 0], pl[:, 3]], mt[pl[:, 1], pl[:, 4]]], mt[pl[:, 2], pl[:, 5]]]
    rep.checked += scene.num_lines
    rep.add_failures({'line': int(i), 'kind': 'plucker relation'} for i in np.nonzero(klein)[0])
    on = scene.dot(scene.points[scene.line_points][:, :, None, :], scene.points[scene.line_planes][:, None, :, :])
    rep.checked += scene.num_lines
    rep.add_failures({'line': int(i), 'kind': 'point not in plane'} for i in np.nonzero(on.any(axis=(1, 2)))[0])
    ids, found = scene.lookup_plucker(pl)
    rep.checked += scene.num_lines
    rep.add_failures({'line': int(i), 'kind': 'plucker lookup'}
                     for i in np.nonzero(~found | (ids != np.arange(scene.num_lines)))[0])
    rep.details['points'] = scene.num_points
    rep.details['lines'] = scene.num_lines
    return rep.finish()


# ----------------------------------------------------------------------
# Klein 对应
# ----------------------------------------------------------------------
def klein_map(model: QuadricModel, frame: PluckerFrame, scene: Pg3Scene) -> np.ndarray:
    """二次曲面点编号 → 直线编号"""
    plucker = model.tower.f_matmul(model.f_coords, frame.M)
    return scene.line_ids_from_plucker(plucker)


def quadric_point_to_line(p: QuadricPoint, model: QuadricModel, frame: PluckerFrame, scene: Pg3Scene) -> int:
    if model.quadratic_form(p.u, p.v) != 0:
        raise NotOnQuadric("点不在 Q⁺(5,q) 上", witness=p.to_list())
    coords = np.concatenate([model.tower.f_coordinates(p.u), model.tower.f_coordinates(p.v)])
    plucker = model.tower.f_matmul(coords[None, :], frame.M)
    return int(scene.line_ids_from_plucker(plucker)[0])


def line_to_quadric_point(line: int, model: QuadricModel, frame: PluckerFrame, scene: Pg3Scene) -> int:
    t = model.tower
    coords = t.f_matmul(scene.plucker[line][None, :], frame.basis)[0]
    vals = t.f_to_field(coords)
    u = v = 0
    for k in range(3):
        u = t.add(u, t.mul(int(vals[k]), int(t.basis[k])))
        v = t.add(v, t.mul(int(vals[3 + k]), int(t.basis[k])))
    return model.point_id(u, v)


def transfer_tight_set(T, klein: np.ndarray) -> LineClass:
    """紧集 → Cameron–Liebler 线类 (点编号经 Klein 映射变为直线编号)"""
    return LineClass(T.label.replace('T', 'L', 1), T.q, T.parameter_x, np.sort(klein[T.points]))


def locate_special_elements(model: QuadricModel, scene: Pg3Scene, klein: np.ndarray) -> Tuple[int, int]:
    """π₁ 的像为 star(p₀)，π₂ 的像为 line(π)；返回 (p₀, π)"""
    star_lines = klein[model.in_pi1]
    plane_lines = klein[model.in_pi2]
    p0 = scene.common_point(star_lines[:1], star_lines[1:2])[0]
    shared = np.intersect1d(scene.line_planes[plane_lines[0]], scene.line_planes[plane_lines[1]])
    if p0 < 0 or len(shared) != 1:
        raise ModelViolation("生成元的像不是点星与平面线集", witness={'p0': int(p0), 'planes': shared.tolist()})
    return int(p0), int(shared[0])


def verify_klein_map(model: QuadricModel, frame: PluckerFrame, scene: Pg3Scene, klein: np.ndarray,
                     seed: Optional[int] = None) -> List[CheckReport]:
    q = model.q
    rng = np.random.default_rng(VERIFY_CONFIG['seed'] if seed is None else seed)
    reports = []

    rep = CheckReport('klein_bijection', q, domain_size=model.num_points, error_class=ModelViolation)
    rep.expect(len(np.unique(klein)) == scene.num_lines == model.num_points, 'not a bijection')
    if q <= VERIFY_CONFIG['exhaustive_max_q']:
        lines = np.arange(scene.num_lines)
    else:
        lines = rng.choice(scene.num_lines, 1000, replace=False)
        rep.scope = 'sampled'
    inverse = np.empty(scene.num_lines, dtype=np.int64)
    inverse[klein] = np.arange(model.num_points)
    for line in lines:
        rep.expect(line_to_quadric_point(int(line), model, frame, scene) == inverse[line], {'line': int(line)})
    reports.append(rep.finish())

    rep = CheckReport('generator_systems', q, error_class=ModelViolation)
    p0, pi = locate_special_elements(model, scene, klein)
    rep.expect(np.array_equal(np.sort(klein[model.in_pi1]), np.sort(scene.star(p0))), 'π₁ ↛ star(p₀)')
    rep.expect(np.array_equal(np.sort(klein[model.in_pi2]), np.sort(scene.lines_in_plane(pi))), 'π₂ ↛ line(π)')
    rep.expect(not scene.incident(p0, pi), 'p₀ ∈ π')
    rep.expect(p0 == scene.point_id([1, 0, 0, 0]) and pi == scene.point_id([1, 0, 0, 0]),
               {'p0': p0, 'pi': pi})
    rep.details['p0'] = scene.points[p0].tolist()
    rep.details['pi'] = scene.points[pi].tolist()
    reports.append(rep.finish())

    rep = CheckReport('collinear_iff_concurrent', q, scope='sampled', domain_size=model.num_points ** 2,
                      error_class=ModelViolation)
    n = VERIFY_CONFIG['collinearity_pairs']
    a = rng.integers(0, model.num_points, n)
    b = rng.integers(0, model.num_points, n)
    collinear = model.polar_form(model.u[a], model.v[a], model.u[b], model.v[b]) == 0
    meet = scene.lines_meet(klein[a], klein[b])
    rep.checked = n
    rep.add_failures({'p1': int(x), 'p2': int(y)} for x, y in zip(a[collinear != meet], b[collinear != meet]))
    reports.append(rep.finish())
    return reports


def line_permutation(perm: np.ndarray, klein: np.ndarray) -> np.ndarray:
    """二次曲面上的点置换经 Klein 映射变成直线置换"""
    inverse = np.empty_like(klein)
    inverse[klein] = np.arange(len(klein))
    return klein[perm[inverse]]


def induced_point_permutation(scene: Pg3Scene, line_perm: np.ndarray) -> np.ndarray:
    """保持点星族的直线置换诱导的点置换：r 的像是过 r 的两条直线之像的交点"""
    first = line_perm[scene.point_lines[:, 0]]
    second = line_perm[scene.point_lines[:, 1]]
    image = scene.common_point(first, second)
    if np.any(image < 0) or len(np.unique(image)) != scene.num_points:
        raise ModelViolation("直线置换不保持点星，无法诱导点置换")
    return image


# ----------------------------------------------------------------------
# 展开 (spread)
# ----------------------------------------------------------------------
def random_collineation(tower: FieldTower, rng) -> np.ndarray:
    while True:
        A = rng.integers(0, tower.q, (4, 4))
        if tower.f_det(A) != 0:
            return A.astype(np.int64)


def build_regular_spread(tower: FieldTower, scene: Pg3Scene, transform: Optional[np.ndarray] = None) -> Spread:
    """F_{q²} = F[t]/(t² - ω) 上的一维子空间：<(1,0,y_a,y_b), (0,1,ω·y_b,y_a)> 以及 <e₂, e₃>"""
    t = tower
    q = t.q
    ya, yb = np.meshgrid(np.arange(q), np.arange(q), indexing='ij')
    ya, yb = ya.ravel(), yb.ravel()
    omega_code = t.f_code(t.omega)
    x = np.stack([np.ones_like(ya), np.zeros_like(ya), ya, yb], axis=1)
    y = np.stack([np.zeros_like(ya), np.ones_like(ya), t.f_mul_tbl[omega_code, yb], ya], axis=1)
    x = np.vstack([x, [0, 0, 1, 0]])
    y = np.vstack([y, [0, 0, 0, 1]])
    if transform is not None:
        transform = np.asarray(transform, dtype=np.int64)
        if transform.shape != (4, 4) or t.f_det(transform) == 0:
            raise BadTransform("变换矩阵不可逆", witness=transform.tolist())
        x = t.f_matmul(x, transform)
        y = t.f_matmul(y, transform)
    lines = scene.line_ids_from_spans(x, y)
    spread = Spread(lines, transform)
    pts = scene.line_points[lines].ravel()
    if len(lines) != q * q + 1 or len(np.unique(pts)) != scene.num_points:
        raise ModelViolation("不是展开：直线相交或未覆盖所有点", witness={'lines': len(lines)})
    return spread
