# -*- coding: utf-8 -*-
"""
乘法特征、Gauss 和、Fourier 变换与 κ_z 计数
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import FIELD_CONFIG, VERIFY_CONFIG
from utils.check_report import CheckReport
from utils.errors import FieldTooLarge, IdentityViolation, InvalidQ
from utils.field_tower import FieldTower

_LABELS = ('1', 'i', '-1', '-i')


@dataclass(frozen=True)
class UnitRoot4:
    """i^k，k 取模 4；k 为 None 表示 0"""
    k: Optional[int]

    @classmethod
    def zero(cls) -> 'UnitRoot4':
        return cls(None)

    @classmethod
    def of(cls, k: int) -> 'UnitRoot4':
        return cls(int(k) % 4)

    @property
    def is_zero(self) -> bool:
        return self.k is None

    def __mul__(self, other: 'UnitRoot4') -> 'UnitRoot4':
        if self.is_zero or other.is_zero:
            return UnitRoot4.zero()
        return UnitRoot4.of(self.k + other.k)

    def conj(self) -> 'UnitRoot4':
        return self if self.is_zero else UnitRoot4.of(-self.k)

    @property
    def value(self) -> complex:
        return 0j if self.is_zero else 1j ** self.k

    @property
    def label(self) -> str:
        return '0' if self.is_zero else _LABELS[self.k]


@dataclass(frozen=True)
class Character:
    """χ(α^n) = exp(2πi·n·m/modulus_order)

    field='F' 时离散对数取关于 ω 的对数，modulus_order = q-1。
    """
    modulus_order: int
    exponent: int
    field: str = 'E'

    @property
    def is_trivial(self) -> bool:
        return self.exponent % self.modulus_order == 0

    @property
    def order(self) -> int:
        return self.modulus_order // math.gcd(self.exponent % self.modulus_order, self.modulus_order)

    @property
    def zero_value(self) -> int:
        return 1 if self.is_trivial else 0

    def conjugate(self) -> 'Character':
        return Character(self.modulus_order, (-self.exponent) % self.modulus_order, self.field)

    def __mul__(self, other: 'Character') -> 'Character':
        if (self.modulus_order, self.field) != (other.modulus_order, other.field):
            raise ValueError("特征定义在不同的群上")
        return Character(self.modulus_order, (self.exponent + other.exponent) % self.modulus_order, self.field)

    def __pow__(self, k: int) -> 'Character':
        return Character(self.modulus_order, (self.exponent * k) % self.modulus_order, self.field)


class CharacterEngine:
    """绑定在一个域塔上的特征计算器 (只读)"""

    def __init__(self, tower: FieldTower):
        self.logger = logging.getLogger('TightSetLab.CharacterEngine')
        self.tower = tower
        t = tower
        if t.size > FIELD_CONFIG['max_table_entries']:
            raise FieldTooLarge(f"|E| = {t.size} 超过上限", witness=t.size)
        self.sign = -1 if t.omega_sign == 'minus' else 1
        self.zeta_powers = np.exp(2j * np.pi * np.arange(t.p) / t.p)

        # F 中元素的绝对迹 Tr_{F/F_p}，按 F 码存放
        f_elems = t.f_elements
        acc = f_elems.copy()
        for k in range(1, t.h):
            acc = t.add(acc, t.power(f_elems, t.p ** k))
        self.f_fp_trace = acc

        self._gauss_cache: Dict[str, np.ndarray] = {}

    # ------------------------------------------------------------------
    # 常用特征
    # ------------------------------------------------------------------
    def character(self, exponent: int, field: str = 'E') -> Character:
        modulus = self.tower.order if field == 'E' else self.tower.q - 1
        return Character(modulus, exponent % modulus, field)

    def chi2(self, field: str = 'E') -> Character:
        modulus = self.tower.order if field == 'E' else self.tower.q - 1
        return Character(modulus, modulus // 2, field)

    def chi4(self) -> Character:
        if self.tower.order % 4:
            raise InvalidQ("q³-1 不被 4 整除，χ₄ 不存在", witness=self.tower.q)
        return Character(self.tower.order, self.tower.order // 4, 'E')

    def restrict_to_subfield(self, chi: Character) -> Character:
        """E 上特征限制到 F：指数变为 ±m mod (q-1) (符号随 ω 约定)"""
        q = self.tower.q
        return Character(q - 1, (self.sign * chi.exponent) % (q - 1), 'F')

    # ------------------------------------------------------------------
    # 取值
    # ------------------------------------------------------------------
    def _discrete_log(self, x, field: str):
        t = self.tower
        x = np.asarray(x, dtype=np.int64)
        if field == 'E':
            return t.log_table[x]
        codes = t.f_code_table[x]
        if np.any(codes < 0):
            raise ValueError("元素不在 F 中")
        return codes - 1

    def evaluate(self, chi: Character, x):
        """返回单位根指数 (n·m mod modulus)；x = 0 时返回 None (平凡特征取值为 1 由 zero_value 给出)"""
        logs = self._discrete_log(x, chi.field)
        expo = (logs * chi.exponent) % chi.modulus_order
        if np.ndim(logs) == 0:
            return None if logs < 0 else int(expo)
        return np.where(logs < 0, -1, expo)

    def evaluate_complex(self, chi: Character, x):
        logs = self._discrete_log(x, chi.field)
        vals = np.exp(2j * np.pi * ((logs * chi.exponent) % chi.modulus_order) / chi.modulus_order)
        vals = np.where(logs < 0, chi.zero_value, vals)
        return complex(vals) if np.ndim(vals) == 0 else vals

    def evaluate_sign(self, chi: Character, x):
        """实特征 (阶 ≤ 2) 的整数取值 ±1 / 0"""
        if chi.order > 2:
            raise ValueError("只适用于实特征")
        logs = self._discrete_log(x, chi.field)
        expo = (logs * chi.exponent) % chi.modulus_order
        vals = np.where(logs < 0, chi.zero_value, np.where(expo == 0, 1, -1))
        return int(vals) if np.ndim(vals) == 0 else vals

    # ------------------------------------------------------------------
    # Gauss 和
    # ------------------------------------------------------------------
    def gauss_sum(self, chi: Character) -> Tuple[complex, float]:
        """G(χ) = Σ χ(x) ζ^{Tr(x)}，补偿求和；返回 (值, 先验误差界)"""
        t = self.tower
        if chi.field == 'E':
            elements = np.arange(1, t.size, dtype=np.int64)
            traces = t.fp_trace_table[elements]
            r = t.big_degree
        else:
            elements = t.f_elements[1:]
            traces = self.f_fp_trace[1:]
            r = t.h
        if t.p ** r > FIELD_CONFIG['max_table_entries']:
            raise FieldTooLarge(f"p^{r} 超过上限", witness=t.p ** r)
        terms = self.evaluate_complex(chi, elements) * self.zeta_powers[traces]
        value = complex(math.fsum(terms.real), math.fsum(terms.imag))
        value += chi.zero_value  # x = 0 项: χ(0)·ζ^0
        bound = 4.0 * t.p ** r * np.finfo(float).eps
        return value, bound

    def all_gauss_sums(self, field: str = 'E') -> np.ndarray:
        """全部特征的 Gauss 和，下标为特征指数 m (FFT 计算)"""
        if field in self._gauss_cache:
            return self._gauss_cache[field]
        t = self.tower
        if field == 'E':
            n = t.order
            seq = self.zeta_powers[t.fp_trace_table[t.exp_table]]
        else:
            n = t.q - 1
            seq = self.zeta_powers[self.f_fp_trace[1:]]
        sums = n * np.fft.ifft(seq)
        sums[0] += 1.0
        self._gauss_cache[field] = sums
        return sums

    # ------------------------------------------------------------------
    # Fourier 变换 (函数按离散对数排列: f[k] = f(α^k))
    # ------------------------------------------------------------------
    def fourier_transform(self, f: np.ndarray) -> np.ndarray:
        """f̂(χ_m) = Σ_x f(x) χ̄_m(x)"""
        f = np.asarray(f, dtype=complex)
        if f.shape != (self.tower.order,):
            raise ValueError(f"f 需定义在整个 E* 上 (长度 {self.tower.order})")
        return np.fft.fft(f)

    def inverse_fourier_transform(self, fhat: np.ndarray) -> np.ndarray:
        return np.fft.ifft(np.asarray(fhat, dtype=complex))

    # ------------------------------------------------------------------
    # κ_z
    # ------------------------------------------------------------------
    def kappa_counts(self, logs: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """对一批 x = α^L 计算 (counts[:, 0..3], zero_pairs, both_zero)"""
        t = self.tower
        if t.order % 4:
            raise InvalidQ("κ_z 需要 q ≡ 1 (mod 4)", witness=t.q)
        logs = np.asarray(logs, dtype=np.int64)
        steps = np.arange(t.plane_order, dtype=np.int64) * t.mu_exponent
        t1 = t.trace_table[t.exp_table[(logs[:, None] + steps[None, :]) % t.order]]
        t2 = t.trace_table[t.exp_table[(logs[:, None] - steps[None, :]) % t.order]]
        l1, l2 = t.log_table[t1], t.log_table[t2]
        live = (l1 >= 0) & (l2 >= 0)
        r = (l1 - l2) % 4
        counts = np.stack([np.count_nonzero(live & (r == k), axis=1) for k in range(4)], axis=1)
        zero_pairs = np.count_nonzero(~live, axis=1)
        both_zero = np.count_nonzero((l1 < 0) & (l2 < 0), axis=1)
        return counts, zero_pairs, both_zero

    def kappa_profile(self, x: int) -> 'KappaProfile':
        if x == 0:
            raise ValueError("κ_z 只对 x ≠ 0 定义")
        counts, zero_pairs, both_zero = self.kappa_counts(np.array([self.tower.log(x)]))
        return KappaProfile(int(x), tuple(int(c) for c in counts[0]), int(zero_pairs[0]), int(both_zero[0]))


@dataclass(frozen=True)
class KappaProfile:
    x: int
    counts: Tuple[int, int, int, int]     # 依次为 κ_1, κ_i, κ_{-1}, κ_{-i}
    zero_pairs: int
    both_zero: int = 0

    def kappa(self, z: UnitRoot4) -> int:
        if z.is_zero:
            return self.zero_pairs
        return self.counts[z.k]

    def as_dict(self) -> Dict[str, int]:
        data = {label: c for label, c in zip(_LABELS, self.counts)}
        data['0'] = self.zero_pairs
        return data


# ----------------------------------------------------------------------
# 验证
# ----------------------------------------------------------------------
def _tolerance(tower: FieldTower) -> float:
    return 1e-6 * tower.p ** (tower.big_degree / 2)


def verify_gauss_identities(tower: FieldTower, engine: Optional[CharacterEngine] = None,
                            seed: Optional[int] = None) -> List[CheckReport]:
    """Gauss 和恒等式族：乘积、χ₂ 求值、Davenport–Hasse (d=2 与 d=4)、迹比值、正交性、Fourier 往返"""
    engine = engine or CharacterEngine(tower)
    t = tower
    q, n, p = t.q, t.order, t.p
    tol = _tolerance(t)
    rng = np.random.default_rng(VERIFY_CONFIG['seed'] if seed is None else seed)
    G = engine.all_gauss_sums('E')
    GF = engine.all_gauss_sums('F')
    reports = []
    ms = np.arange(n, dtype=np.int64)

    # G(χ)G(χ̄) = χ(-1) p^r
    rep = CheckReport('gauss_product', q, domain_size=n - 1, error_class=IdentityViolation)
    r = t.big_degree
    lhs = G[1:] * G[(-ms[1:]) % n]
    rhs = np.where(ms[1:] % 2 == 0, 1.0, -1.0) * float(p) ** r
    bad = np.abs(lhs - rhs) > tol * p ** (r / 2)
    bad |= np.abs(np.abs(G[1:]) ** 2 - float(p) ** r) > tol * p ** (r / 2)
    rep.checked = n - 1
    rep.add_failures({'m': int(m), 'lhs': complex(a), 'rhs': float(b)}
                     for m, a, b in zip(ms[1:][bad], lhs[bad], rhs[bad]))
    reports.append(rep.finish())

    # G_r(χ₂) 的闭式
    rep = CheckReport('gauss_quadratic', q, domain_size=2, error_class=IdentityViolation)
    for field, value, rr in (('E', G[n // 2], t.big_degree), ('F', GF[(q - 1) // 2], t.h)):
        expected = (-1) ** (rr - 1) * math.sqrt(p ** rr)
        if p % 4 == 3:
            expected = expected * 1j ** rr
        direct, bound = engine.gauss_sum(engine.chi2(field))
        ok = abs(value - expected) <= tol and abs(direct - expected) <= tol + bound
        rep.expect(ok, {'field': field, 'fft': complex(value), 'direct': direct, 'expected': complex(expected)})
        rep.details[f'G_{field}'] = [float(np.real(value)), float(np.imag(value))]
    reports.append(rep.finish())

    # Davenport–Hasse, d = 2
    log2 = t.log(t.element(2))
    admissible = ms[(ms != 0) & (ms != n // 2)]
    if q == 5 or len(admissible) <= VERIFY_CONFIG['davhasse_sample']:
        sample, scope = admissible, 'exhaustive'
    else:
        sample = np.sort(rng.choice(admissible, VERIFY_CONFIG['davhasse_sample'], replace=False))
        scope = f"sampled(seed={VERIFY_CONFIG['seed'] if seed is None else seed})"
    rep = CheckReport('davenport_hasse_d2', q, scope=scope, domain_size=len(admissible),
                      error_class=IdentityViolation)
    chi_sq_2 = np.exp(2j * np.pi * ((2 * sample * log2) % n) / n)
    lhs = chi_sq_2 * G[sample] * G[(sample + n // 2) % n]
    rhs = G[(2 * sample) % n] * G[n // 2]
    bad = np.abs(lhs - rhs) > tol * p ** (r / 2)
    rep.checked = len(sample)
    rep.add_failures({'m': int(m)} for m in sample[bad])
    reports.append(rep.finish())

    # Davenport–Hasse, d = 4
    quarter = n // 4
    admissible4 = ms[ms % quarter != 0]
    if len(admissible4) <= VERIFY_CONFIG['davhasse_sample'] or q == 5:
        sample4 = admissible4
    else:
        sample4 = np.sort(rng.choice(admissible4, VERIFY_CONFIG['davhasse_sample'], replace=False))
    rep = CheckReport('davenport_hasse_d4', q, scope='exhaustive' if len(sample4) == len(admissible4) else 'sampled',
                      domain_size=len(admissible4), error_class=IdentityViolation)
    log4 = t.log(t.element(4))
    lhs = np.exp(2j * np.pi * ((4 * sample4 * log4) % n) / n) * G[sample4]
    rhs = G[(4 * sample4) % n].copy()
    for i in range(1, 4):
        lhs = lhs * G[(sample4 + i * quarter) % n]
        rhs = rhs * G[i * quarter]
    bad = np.abs(lhs - rhs) > tol * p ** (3 * r / 2)
    rep.checked = len(sample4)
    rep.add_failures({'m': int(m)} for m in sample4[bad])
    reports.append(rep.finish())

    # Σ χ̄(T(x))χ(x) = (q-1) G_{3h}(χ) / G_h(χ|_F)
    rep = CheckReport('gauss_trace_ratio', q, error_class=IdentityViolation)
    ks = np.arange(n, dtype=np.int64)
    tr = t.trace_table[t.exp_table]
    live = tr != 0
    diffs = (ks[live] - t.log_table[tr[live]]) % n
    hist = np.bincount(diffs, minlength=n).astype(float)
    lhs_all = n * np.fft.ifft(hist)
    chosen = ms[ms % (q - 1) != 0]
    restricted = (engine.sign * chosen) % (q - 1)
    rhs_all = (q - 1) * G[chosen] / GF[restricted]
    bad = np.abs(lhs_all[chosen] - rhs_all) > tol
    rep.domain_size = n
    rep.checked = len(chosen)
    rep.details['excluded_trivial_restriction'] = int(n - len(chosen))
    rep.details['chi2_lhs'] = [float(lhs_all[n // 2].real), float(lhs_all[n // 2].imag)]
    rep.add_failures({'m': int(m), 'lhs': complex(a), 'rhs': complex(b)}
                     for m, a, b in zip(chosen[bad], lhs_all[chosen][bad], rhs_all[bad]))
    reports.append(rep.finish())

    reports.append(_verify_orthogonality(engine, rng))

    rep = CheckReport('fourier_round_trip', q, domain_size=n, error_class=IdentityViolation)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    back = engine.inverse_fourier_transform(engine.fourier_transform(f))
    err = float(np.linalg.norm(back - f) / np.linalg.norm(f))
    rep.expect(err < 1e-8, {'relative_error': err})
    rep.details['relative_error'] = err
    reports.append(rep.finish())
    return reports


def _verify_orthogonality(engine: CharacterEngine, rng) -> CheckReport:
    """Σ_{x∈E*} χ(x) = 0：指数 m·k mod n 在子群上均匀分布 (精确整数判定)"""
    t = engine.tower
    n = t.order
    ms = np.arange(1, n, dtype=np.int64)
    if n > 10 ** 4:
        ms = np.sort(rng.choice(ms, 500, replace=False))
        scope = 'sampled'
    else:
        scope = 'exhaustive'
    rep = CheckReport('character_orthogonality', t.q, scope=scope, domain_size=n - 1,
                      error_class=IdentityViolation)
    ks = np.arange(n, dtype=np.int64)
    for m in ms:
        g = math.gcd(int(m), n)
        counts = np.bincount((m * ks) % n, minlength=n)
        support = counts[::g]
        rep.expect(bool(np.all(support == g)) and counts.sum() == support.sum(), {'m': int(m)})
    return rep.finish()


def verify_kappa_theorem(tower: FieldTower, engine: Optional[CharacterEngine] = None,
                         executor=None) -> List[CheckReport]:
    """κ₁(x) - κ₋₁(x) = q·χ₂(x)χ₂(T(x))，以及 κ_i = κ_{-i}、计数划分、F*-不变性"""
    engine = engine or CharacterEngine(tower)
    t = tower
    q = t.q
    exhaustive = q <= VERIFY_CONFIG['exhaustive_max_q'] or t.order <= 10 ** 5
    logs = np.arange(t.order, dtype=np.int64)
    chunks = np.array_split(logs, max(1, len(logs) // VERIFY_CONFIG['chunk_rows']))
    mapper = executor.map if executor is not None else map
    parts = list(mapper(engine.kappa_counts, chunks))
    counts = np.concatenate([c for c, _, _ in parts])
    zero_pairs = np.concatenate([z for _, z, _ in parts])

    xs = t.exp_table[logs]
    chi2_x = np.where(logs % 2 == 0, 1, -1)
    tr = t.trace_table[xs]
    chi2_tr = np.where(tr == 0, 0, np.where(t.log_table[tr] % 2 == 0, 1, -1))
    lhs = counts[:, 0] - counts[:, 2]
    rhs = q * chi2_x * chi2_tr

    reports = []
    rep = CheckReport('kappa_one_minus', q, scope='exhaustive' if exhaustive else 'exhaustive(slow)',
                      domain_size=t.order, error_class=IdentityViolation)
    rep.checked = t.order
    bad = lhs != rhs
    rep.add_failures({'x': int(x), 'lhs': int(a), 'rhs': int(b)} for x, a, b in zip(xs[bad], lhs[bad], rhs[bad]))
    rep.details['trace_zero_elements'] = int(np.count_nonzero(tr == 0))
    reports.append(rep.finish())

    rep = CheckReport('kappa_i_symmetry', q, domain_size=t.order, error_class=IdentityViolation)
    rep.checked = t.order
    bad = counts[:, 1] != counts[:, 3]
    rep.add_failures({'x': int(x)} for x in xs[bad])
    reports.append(rep.finish())

    rep = CheckReport('kappa_partition', q, domain_size=t.order, error_class=IdentityViolation)
    rep.checked = t.order
    bad = counts.sum(axis=1) + zero_pairs != t.plane_order
    rep.add_failures({'x': int(x)} for x in xs[bad])
    reports.append(rep.finish())

    # ωx 的对数为 L + ω 指数；ω 生成 F*，故逐个比较即得 F*-不变性
    rep = CheckReport('kappa_scalar_invariance', q, domain_size=t.order, error_class=IdentityViolation)
    shifted = (logs + t.omega_exponent) % t.order
    bad = np.any(counts != counts[shifted], axis=1)
    rep.checked = t.order
    rep.add_failures({'x': int(x)} for x in xs[bad])
    reports.append(rep.finish())
    return reports
