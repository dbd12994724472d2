"""Two-variable Krawtchouk polynomials and the closed-form eigenbasis.

The one-excitation Hamiltonian H of the triangular model is diagonalized by
an orthogonal matrix with entries

    W[(i,j), (s,t)] = W00(s,t) * K_{i,j}(s,t) / sqrt_r(i,j)

where K are two-variable Krawtchouk polynomials evaluated on the dual
triangle (s, t), r is a trinomial-type weight over sites, and W00 is the
square root of the dual weight.  The eigenvalue attached to column (s,t)
is linear: x_{s,t} = (p1+p2) s - (p3+p4) t.

Conventions fixed by this module (each one is pinned by exact-rational
tests at small N):

* Explicit sum.  K_{i,j}(s,t) is the terminating quadruple sum over
  k,l,m,n >= 0 with k+l+m+n <= N of

      (-i)_{k+l} (-j)_{m+n} (-s)_{k+m} (-t)_{l+n}
      ------------------------------------------- u1^k v1^l u2^m v2^n
           k! l! m! n! (-N)_{k+l+m+n}

  The monomial exponents are the summation indices themselves: u1 carries
  k, v1 carries l, u2 carries m, v2 carries n.  This is the unique
  assignment of the four indices to the four bases under which the 5-term
  recurrence holds identically.

* Signed root of the weight.  The weight r_{i,j} contains the factor
  (p1 p4 - p2 p3)^(2(i+j)); its square root is taken as the signed power
  (p1 p4 - p2 p3)^(i+j).  With the unsigned branch the columns of W stop
  being eigenvectors of H whenever p1 p4 < p2 p3.

* Dual weight normalization.  W00(s,t)^2 is the trinomial distribution
  with cell weights eta1 = S p1 p2/(p1+p2) (exponent s),
  eta2 = S p3 p4/(p3+p4) (exponent t) and
  eta0 = (p1 p4 - p2 p3)^2/((p1+p2)(p3+p4)) (exponent N-s-t), divided by
  ((p1+p3)(p2+p4))^N.  The identity
  eta0 + eta1 + eta2 = (p1+p3)(p2+p4) makes the weights sum to one.

Evaluation strategy.  Scalar polynomial values and tables come from the
explicit sum in log space with sign tracking; the alternating terms cancel
heavily, so those routines are for desk scale.  The full matrix W is
assembled instead through the product structure of the model: the lattice
Hamiltonian is the N-boson lift of a single 3x3 symmetric seed (the
couplings carry exactly the sqrt(occupation) factors of three bosonic
modes), so W is the N-th symmetric power of the 3x3 closed-form eigenbasis
at order 1.  The lift recursion only combines rotation coefficients and
keeps W orthogonal to machine precision at any order; exact-rational tests
pin it entrywise to the w00 * K / sqrt(r) closed form at small orders.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping, Tuple

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import DomainError, SizeError
from .lattice import SiteIndex, TriangularLattice
from .model import ModelParams, build_one_excitation_hamiltonian

# explicit-sum cost grows like N^4 per entry; past this order use the
# numeric propagator instead
EXPLICIT_SUM_MAX_ORDER = 32


@dataclass(frozen=True)
class KrawtchoukParams:
    """The four polynomial arguments derived from p1..p4; positive for valid params."""

    u1: float
    u2: float
    v1: float
    v2: float

    @classmethod
    def from_model(cls, params: ModelParams) -> "KrawtchoukParams":
        p1, p2, p3, p4 = params.as_tuple()
        s = params.S
        return cls(
            u1=(p1 + p2) * (p1 + p3) / (p1 * s),
            u2=(p1 + p2) * (p2 + p4) / (p2 * s),
            v1=(p1 + p3) * (p3 + p4) / (p3 * s),
            v2=(p2 + p4) * (p3 + p4) / (p4 * s),
        )


def _check_pair(label: str, a: int, b: int, n: int):
    if a < 0 or b < 0 or a + b > n:
        raise DomainError(f"{label} ({a}, {b}) outside triangular domain of order {n}")


def eigenvalue(s: int, t: int, params: ModelParams) -> float:
    """x_{s,t} = (p1+p2) s - (p3+p4) t for s, t >= 0 with s + t <= n."""
    _check_pair("quantum numbers", s, t, params.n)
    return (params.p1 + params.p2) * s - (params.p3 + params.p4) * t


def log_trinomial(n: int, i: int, j: int) -> float:
    """log of n! / (i! j! (n-i-j)!)."""
    return (
        gammaln(n + 1) - gammaln(i + 1) - gammaln(j + 1) - gammaln(n - i - j + 1)
    )


def weight_r(i: int, j: int, params: ModelParams) -> float:
    """Site weight r_{i,j} > 0, evaluated in log space to avoid overflow."""
    _check_pair("site", i, j, params.n)
    p1, p2, p3, p4 = params.as_tuple()
    log_r = (
        2 * (i + j) * math.log(abs(params.delta))
        - (i + j) * math.log(params.S)
        - i * math.log(p1 * p3 * (p2 + p4))
        - j * math.log(p2 * p4 * (p1 + p3))
        - log_trinomial(params.n, i, j)
    )
    return math.exp(log_r)


def sqrt_weight_signed(i: int, j: int, params: ModelParams) -> float:
    """Signed square root of r_{i,j}: the Delta^(2(i+j)) factor roots to Delta^(i+j).

    Using |Delta|^(i+j) instead breaks the eigenvector property of W when
    p1 p4 < p2 p3 (both PST roots land on opposite sides of that line).
    """
    sign = -1.0 if (params.delta < 0 and (i + j) % 2 == 1) else 1.0
    return sign * math.sqrt(weight_r(i, j, params))


def w00(s: int, t: int, params: ModelParams) -> float:
    """Positive square root of the dual (quantum-number) weight at (s,t).

    Includes the S^(s+t) normalization factor; without it the columns of W
    are not unit vectors (exact-rational tests pin this down).
    """
    _check_pair("quantum numbers", s, t, params.n)
    p1, p2, p3, p4 = params.as_tuple()
    n = params.n
    log_w2 = (
        log_trinomial(n, s, t)
        - n * math.log((p1 + p3) * (p2 + p4))
        + 2 * (n - s - t) * math.log(abs(params.delta))
        + s * math.log(p1 * p2)
        + t * math.log(p3 * p4)
        - (n - t) * math.log(p1 + p2)
        - (n - s) * math.log(p3 + p4)
        + (s + t) * math.log(params.S)
    )
    return math.exp(0.5 * log_w2)


def krawtchouk_explicit(i: int, j: int, s: int, t: int, params: ModelParams) -> float:
    """One polynomial value K_{i,j}(s,t) from the terminating quadruple sum.

    Pochhammer factors with nonnegative-integer upper arguments truncate
    every summation index, so the loops below enumerate exactly the nonzero
    terms.  Each term is assembled in log space with its sign; the signed
    terms are combined with logsumexp.
    """
    n = params.n
    _check_pair("site", i, j, n)
    _check_pair("quantum numbers", s, t, n)
    kp = KrawtchoukParams.from_model(params)
    fl = gammaln(np.arange(n + 2) + 1.0)  # fl[x] = log x!
    log_u1, log_v1 = math.log(kp.u1), math.log(kp.v1)
    log_u2, log_v2 = math.log(kp.u2), math.log(kp.v2)

    logs = []
    signs = []
    for k in range(min(i, s) + 1):
        for l in range(min(i - k, t) + 1):
            for m in range(min(j, s - k) + 1):
                for nn in range(min(j - m, t - l) + 1):
                    q = k + l + m + nn
                    if q > n:
                        continue
                    logmag = (
                        fl[i] - fl[i - k - l]
                        + fl[j] - fl[j - m - nn]
                        + fl[s] - fl[s - k - m]
                        + fl[t] - fl[t - l - nn]
                        + fl[n - q] - fl[n]
                        - fl[k] - fl[l] - fl[m] - fl[nn]
                        + k * log_u1 + l * log_v1 + m * log_u2 + nn * log_v2
                    )
                    logs.append(logmag)
                    signs.append(-1.0 if q % 2 else 1.0)
    total_log, total_sign = logsumexp(np.array(logs), b=np.array(signs), return_sign=True)
    if total_sign == 0.0:
        return 0.0
    return float(total_sign * math.exp(total_log))


def krawtchouk_matrix(params: ModelParams) -> np.ndarray:
    """All polynomial values at once: entry [site, (s,t)] = K_{i,j}(s,t).

    Rows follow lattice site order, columns follow the same lexicographic
    order on (s, t).  The quadruple sum is reorganized as rank-one updates:
    a term with index profile (k+l, m+n, k+m, l+n) contributes an outer
    product of falling-factorial vectors over sites and quantum numbers.
    """
    n = params.n
    if n > EXPLICIT_SUM_MAX_ORDER:
        raise SizeError(
            f"explicit polynomial table limited to order {EXPLICIT_SUM_MAX_ORDER}; "
            "use the numeric propagator for larger lattices"
        )
    lat = TriangularLattice(n)
    kp = KrawtchoukParams.from_model(params)
    # quantum numbers enumerate the same triangle in the same order, so the
    # coordinate vectors serve both the (i,j) rows and the (s,t) columns
    iv = np.array([site.i for site in lat.sites])
    jv = np.array([site.j for site in lat.sites])

    fl = gammaln(np.arange(n + 2) + 1.0)
    # falling[x, a] = x! / (x-a)!, zero when a > x
    falling = np.zeros((n + 1, n + 1))
    for x in range(n + 1):
        for a in range(x + 1):
            falling[x, a] = float(math.perm(x, a))

    # coefficient of outer(site_vec(a,b), qn_vec(c,d)) accumulated over all
    # (k,l,m,n) with k+l=a, m+n=b, k+m=c, l+n=d
    coef: Dict[Tuple[int, int, int, int], float] = {}
    for k in range(n + 1):
        for l in range(n + 1 - k):
            for m in range(n + 1 - k - l):
                for nn in range(n + 1 - k - l - m):
                    q = k + l + m + nn
                    logmag = (
                        fl[n - q] - fl[n] - fl[k] - fl[l] - fl[m] - fl[nn]
                        + k * math.log(kp.u1) + l * math.log(kp.v1)
                        + m * math.log(kp.u2) + nn * math.log(kp.v2)
                    )
                    value = (-1.0 if q % 2 else 1.0) * math.exp(logmag)
                    key = (k + l, m + nn, k + m, l + nn)
                    coef[key] = coef.get(key, 0.0) + value

    site_vecs: Dict[Tuple[int, int], np.ndarray] = {}
    qn_vecs: Dict[Tuple[int, int], np.ndarray] = {}
    out = np.zeros((lat.dim, lat.dim))
    for (a, b, c, d), value in coef.items():
        if (a, b) not in site_vecs:
            site_vecs[(a, b)] = falling[iv, a] * falling[jv, b]
        if (c, d) not in qn_vecs:
            qn_vecs[(c, d)] = falling[iv, c] * falling[jv, d]
        out += value * np.outer(site_vecs[(a, b)], qn_vecs[(c, d)])
    return out


def recurrence_residual(params: ModelParams, s: int, t: int, k_table: Mapping) -> float:
    """Max over sites of |LHS - RHS| of the 5-term recurrence at fixed (s,t).

    k_table maps every site (i,j) with i+j <= n to K_{i,j}(s,t).  Neighbor
    terms that leave the domain carry zero coefficient through the
    (n-i-j), i, j prefactors and are skipped.
    """
    p1, p2, p3, p4 = params.as_tuple()
    n = params.n
    delta = params.delta
    coef_up_i = p1 * p3 * (p2 + p4) * params.S / ((p1 + p3) * delta)
    coef_up_j = p2 * p4 * (p1 + p3) * params.S / ((p2 + p4) * delta)
    coef_down_i = delta / (p1 + p3)
    coef_down_j = delta / (p2 + p4)
    x = eigenvalue(s, t, params)

    worst = 0.0
    for i in range(n + 1):
        for j in range(n + 1 - i):
            here = k_table[(i, j)]
            rhs = 0.0
            slack = n - i - j
            if slack > 0:
                rhs += slack * coef_up_i * (k_table[(i + 1, j)] - here)
                rhs -= slack * coef_up_j * (k_table[(i, j + 1)] - here)
            if i > 0:
                rhs += i * coef_down_i * (k_table[(i - 1, j)] - here)
            if j > 0:
                rhs -= j * coef_down_j * (k_table[(i, j - 1)] - here)
            worst = max(worst, abs(x * here - rhs))
    return worst


def recurrence_scale(params: ModelParams, s: int, t: int, k_table: Mapping) -> float:
    """Largest term magnitude entering the recurrence over the whole table.

    The natural denominator for a relative residual.  Normalizing by
    |x K| instead breaks down at interior zero eigenvalues (x_{s,t} = 0
    happens away from the origin whenever (p1+p2)/(p3+p4) is rational).
    """
    p1, p2, p3, p4 = params.as_tuple()
    n = params.n
    delta = params.delta
    coef_up_i = p1 * p3 * (p2 + p4) * params.S / ((p1 + p3) * delta)
    coef_up_j = p2 * p4 * (p1 + p3) * params.S / ((p2 + p4) * delta)
    coef_down_i = delta / (p1 + p3)
    coef_down_j = delta / (p2 + p4)
    x = eigenvalue(s, t, params)

    scale = 0.0
    for i in range(n + 1):
        for j in range(n + 1 - i):
            here = k_table[(i, j)]
            scale = max(scale, abs(x * here))
            slack = n - i - j
            if slack > 0:
                scale = max(scale, abs(slack * coef_up_i * (k_table[(i + 1, j)] - here)))
                scale = max(scale, abs(slack * coef_up_j * (k_table[(i, j + 1)] - here)))
            if i > 0:
                scale = max(scale, abs(i * coef_down_i * (k_table[(i - 1, j)] - here)))
            if j > 0:
                scale = max(scale, abs(j * coef_down_j * (k_table[(i, j - 1)] - here)))
    return scale


@dataclass(frozen=True)
class EigenSystem:
    """Closed-form eigendecomposition H = W diag(x) W^T with orthogonal W."""

    params: ModelParams
    lattice: TriangularLattice
    quantum_numbers: Tuple[SiteIndex, ...]
    eigenvalues: np.ndarray
    w: np.ndarray

    def eigenvalue_of(self, s: int, t: int) -> float:
        return float(self.eigenvalues[self.lattice.index_of((s, t))])

    def column(self, s: int, t: int) -> np.ndarray:
        return self.w[:, self.lattice.index_of((s, t))]


# W at order 100 already holds ~26M floats; refuse sizes that stop being desk scale
EIGENSYSTEM_MAX_ORDER = 100

# mode order (x, y, z): one x boson is site (1,0), one y is (0,1), one z is (0,0)
_MODE_SITES = ((1, 0), (0, 1), (0, 0))


def _base_rotation(params: ModelParams) -> np.ndarray:
    """3x3 orthogonal seed in mode order: the closed-form eigenbasis at order 1."""
    base = ModelParams(1, params.p1, params.p2, params.p3, params.p4)
    r = np.zeros((3, 3))
    for col, (s, t) in enumerate(_MODE_SITES):
        w0 = w00(s, t, base)
        for row, (i, j) in enumerate(_MODE_SITES):
            r[row, col] = w0 * krawtchouk_explicit(i, j, s, t, base) / sqrt_weight_signed(i, j, base)
    return r


def _lift_eigenbasis(params: ModelParams) -> np.ndarray:
    """W as the n-th symmetric power of the 3x3 seed rotation.

    Removing one boson from eigenmode a of column (s,t) expresses each
    entry through three entries one order down:

        W_n[mu, nu] = sum_b R[b, a] sqrt(mu_b / nu_a) W_{n-1}[mu - e_b, nu - e_a]

    with occupations mu = (i, j, n-i-j) over sites and nu = (s, t, n-s-t)
    over quantum numbers.  Rows and columns keep lattice order on each
    level, so the result lands directly in the package convention.
    """
    n = params.n
    r3 = _base_rotation(params)
    if n == 0:
        return np.ones((1, 1))
    # level 1 in lattice order: sites [(0,0), (0,1), (1,0)] are modes [z, y, x]
    perm = [2, 1, 0]
    current = r3[np.ix_(perm, perm)]
    for level in range(2, n + 1):
        lat = TriangularLattice(level)
        lat_prev = TriangularLattice(level - 1)
        row_prev = np.zeros((3, lat.dim), dtype=int)
        weight = np.zeros((3, lat.dim))
        for q, (i, j) in enumerate(lat.sites):
            occupations = ((i, (i - 1, j)), (j, (i, j - 1)), (level - i - j, (i, j)))
            for b, (mu_b, below) in enumerate(occupations):
                if mu_b > 0:
                    row_prev[b, q] = lat_prev.index_of(below)
                    weight[b, q] = math.sqrt(mu_b)
        lifted = np.zeros((lat.dim, lat.dim))
        for c, (s, t) in enumerate(lat.sites):
            slack = level - s - t
            if slack > 0:
                a, below = 2, (s, t)
                nu_a = slack
            elif s > 0:
                a, below = 0, (s - 1, t)
                nu_a = s
            else:
                a, below = 1, (s, t - 1)
                nu_a = t
            cp = lat_prev.index_of(below)
            column = (
                r3[0, a] * weight[0] * current[row_prev[0], cp]
                + r3[1, a] * weight[1] * current[row_prev[1], cp]
                + r3[2, a] * weight[2] * current[row_prev[2], cp]
            )
            lifted[:, c] = column / math.sqrt(nu_a)
        current = lifted
    return current


def build_eigensystem(params: ModelParams) -> EigenSystem:
    """Assemble the orthogonal eigenbasis and the linear spectrum.

    Entries satisfy W[(i,j),(s,t)] = w00(s,t) K_{i,j}(s,t) / sqrt_r(i,j);
    they are evaluated through the symmetric-power lift rather than the
    alternating explicit sum, which sheds half the mantissa already around
    order ten.
    """
    if params.n > EIGENSYSTEM_MAX_ORDER:
        raise SizeError(f"eigenbasis assembly limited to order {EIGENSYSTEM_MAX_ORDER}")
    lat = TriangularLattice(params.n)
    w = _lift_eigenbasis(params)
    xs = np.array([eigenvalue(s, t, params) for (s, t) in lat.sites])
    w.flags.writeable = False
    xs.flags.writeable = False
    return EigenSystem(
        params=params,
        lattice=lat,
        quantum_numbers=tuple(lat.sites),
        eigenvalues=xs,
        w=w,
    )


@lru_cache(maxsize=16)
def eigensystem_for(params: ModelParams) -> EigenSystem:
    """Cached eigensystems; repeated queries with the same parameters are free."""
    return build_eigensystem(params)


@lru_cache(maxsize=16)
def numeric_eigh_for(params: ModelParams):
    """Numeric eigendecomposition of H; independent of the closed form above."""
    h = build_one_excitation_hamiltonian(params)
    lam, vec = np.linalg.eigh(h)
    lam.flags.writeable = False
    vec.flags.writeable = False
    return lam, vec
