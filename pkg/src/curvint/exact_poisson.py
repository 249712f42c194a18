"""Exact certificates for the ambient realization.

Polynomials in x_0..x_N, p_0..p_N whose coefficients are polynomials in k1, k2
over the rationals.  Brackets computed here are identities in the contraction
parameters, not samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import IndexOrder

Exponent = Tuple[int, ...]


class ParamPoly:
    """Sparse polynomial; exponent layout is (k1, k2, x_0..x_N, p_0..p_N)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Exponent, Fraction] | None = None):
        self.n = n
        self.terms: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    self.terms[tuple(e)] = Fraction(c)

    @property
    def width(self) -> int:
        return 2 + 2 * (self.n + 1)

    # constructors ----------------------------------------------------------------

    @classmethod
    def constant(cls, n: int, c=1) -> "ParamPoly":
        return cls(n, {(0,) * (2 + 2 * (n + 1)): Fraction(c)})

    @classmethod
    def _monomial(cls, n: int, slot: int) -> "ParamPoly":
        e = [0] * (2 + 2 * (n + 1))
        e[slot] = 1
        return cls(n, {tuple(e): Fraction(1)})

    @classmethod
    def k1(cls, n):
        return cls._monomial(n, 0)

    @classmethod
    def k2(cls, n):
        return cls._monomial(n, 1)

    @classmethod
    def x(cls, n, mu):
        return cls._monomial(n, 2 + mu)

    @classmethod
    def p(cls, n, mu):
        return cls._monomial(n, 3 + n + mu)

    # arithmetic ------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            return other
        return ParamPoly.constant(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ParamPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ParamPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ParamPoly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, slot: int) -> "ParamPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[slot]
            if k:
                e2 = list(e)
                e2[slot] = k - 1
                out[tuple(e2)] = c * k
        return ParamPoly(self.n, out)

    def total_degree(self, phase_only: bool = True) -> int:
        start = 2 if phase_only else 0
        return max((sum(e[start:]) for e in self.terms), default=0)

    def substitute(self, k1, k2) -> "ParamPoly":
        """Replace k1, k2 by rational numbers."""
        k1, k2 = Fraction(k1), Fraction(k2)
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e2 = (0, 0) + e[2:]
            out[e2] = out.get(e2, 0) + c * k1 ** e[0] * k2 ** e[1]
        return ParamPoly(self.n, out)

    def evaluate(self, k1, k2, x, p) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(k1), Fraction(k2)] + [Fraction(v) for v in x] + [Fraction(v) for v in p]
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            total += t
        return total

    # printing --------------------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Graded lexicographic order: total degree first, then lex, both descending."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def _names(self):
        n = self.n
        return ["k1", "k2"] + [f"x{i}" for i in range(n + 1)] + [f"p{i}" for i in range(n + 1)]

    def format_term(self, e: Exponent, c: Fraction) -> str:
        names = self._names()
        phase = " ".join(f"{names[i]}^{k}" for i, k in enumerate(e) if i >= 2 and k)
        return f"{c} * k1^{e[0]} k2^{e[1]} * {phase or '1'}"

    def to_text(self) -> str:
        return "\n".join(self.format_term(e, c) for e, c in self.sorted_terms())

    def __repr__(self):
        return f"ParamPoly(n={self.n}, {self.to_text() or '0'!r})"


def poly_bracket(f: ParamPoly, g: ParamPoly) -> ParamPoly:
    """Canonical bracket in the ambient variables, by exact termwise differentiation."""
    n = f.n
    out = ParamPoly(n)
    for mu in range(n + 1):
        xs, ps = 2 + mu, 3 + n + mu
        out = out + f.diff(xs) * g.diff(ps) - g.diff(xs) * f.diff(ps)
    return out


def _coefficient(n: int, mu: int, nu: int) -> ParamPoly:
    if mu == 0:
        return ParamPoly.k1(n) if nu == 1 else ParamPoly.k1(n) * ParamPoly.k2(n)
    if mu == 1:
        return ParamPoly.k2(n)
    return ParamPoly.constant(n, 1)


def realize_generator(n: int, mu: int, nu: int) -> ParamPoly:
    """J_(mu nu) = x_mu p_nu - c_(mu nu) x_nu p_mu."""
    if not (0 <= mu < nu <= n):
        raise IndexOrder(f"generator indices must satisfy 0 <= mu < nu <= {n}, got ({mu}, {nu})")
    X, P = ParamPoly.x, ParamPoly.p
    return X(n, mu) * P(n, nu) - _coefficient(n, mu, nu) * X(n, nu) * P(n, mu)


def generator_pairs(n: int):
    return [(mu, nu) for mu in range(n + 1) for nu in range(mu + 1, n + 1)]


# The nonvanishing brackets, row by row, for index triples i < j < k.
# Each entry: (left, right) -> (sign, k1 power, k2 power, result), with the
# generators named by their position "ij", "ik", "jk" in the triple.
_TRIPLE_TABLE = {
    "ijk": {("ij", "ik"): (1, 0, 0, "jk"), ("ij", "jk"): (-1, 0, 0, "ik"), ("ik", "jk"): (1, 0, 0, "ij")},
    "1jk": {("ij", "ik"): (1, 0, 1, "jk"), ("ij", "jk"): (-1, 0, 0, "ik"), ("ik", "jk"): (1, 0, 0, "ij")},
    "01k": {("ij", "ik"): (1, 1, 0, "jk"), ("ij", "jk"): (-1, 0, 0, "ik"), ("ik", "jk"): (1, 0, 1, "ij")},
    "0jk": {("ij", "ik"): (1, 1, 1, "jk"), ("ij", "jk"): (-1, 0, 0, "ik"), ("ik", "jk"): (1, 0, 0, "ij")},
}


def expected_bracket(a: Tuple[int, int], b: Tuple[int, int]):
    """Right-hand side of [J_a, J_b] from the structure-constant table.

    Returns None for a vanishing bracket, else (sign, k1 power, k2 power, (mu, nu)).
    """
    if a == b or not set(a) & set(b):
        return None
    i, j, k = sorted(set(a) | set(b))
    if i >= 2:
        row = "ijk"
    elif i == 1:
        row = "1jk"
    elif j == 1:
        row = "01k"
    else:
        row = "0jk"
    pos = {(i, j): "ij", (i, k): "ik", (j, k): "jk"}
    inv = {v: key for key, v in pos.items()}
    key = (pos[a], pos[b])
    table = _TRIPLE_TABLE[row]
    if key in table:
        sign, e1, e2, res = table[key]
    else:
        sign, e1, e2, res = table[(key[1], key[0])]
        sign = -sign
    return sign, e1, e2, inv[res]


def expected_bracket_poly(n: int, a, b, realize=None) -> ParamPoly:
    realize = realize or (lambda mu, nu: realize_generator(n, mu, nu))
    rhs = expected_bracket(a, b)
    if rhs is None:
        return ParamPoly(n)
    sign, e1, e2, res = rhs
    return sign * ParamPoly.k1(n) ** e1 * ParamPoly.k2(n) ** e2 * realize(*res)


@dataclass
class BracketReport:
    dim: int
    pairs_checked: int = 0
    failures: List[Tuple[tuple, ParamPoly]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def golden_text(self) -> str:
        lines = [f"# dim {self.dim}: {self.pairs_checked} pairs, {len(self.failures)} failures"]
        for pair, residual in self.failures:
            lines.append(f"[{pair}]")
            lines.append(residual.to_text())
        return "\n".join(lines) + "\n"


def verify_structure_constants(n: int, realize=None) -> BracketReport:
    """Bracket every pair of generators and compare with the table, identically in k1, k2.

    ``realize(mu, nu)`` overrides the generator polynomials (used by mutation tests).
    """
    if n < 2:
        raise ValueError("N must be >= 2")
    realize = realize or (lambda mu, nu: realize_generator(n, mu, nu))
    gens = {pair: realize(*pair) for pair in generator_pairs(n)}
    report = BracketReport(n)
    pairs = generator_pairs(n)
    for ia, a in enumerate(pairs):
        for b in pairs[ia + 1 :]:
            residual = poly_bracket(gens[a], gens[b]) - expected_bracket_poly(n, a, b, lambda mu, nu: gens[(mu, nu)])
            report.pairs_checked += 1
            if not residual.is_zero():
                report.failures.append(((a, b), residual))
    return report


def casimir_poly(n: int) -> ParamPoly:
    """k2 J01^2 + sum_j J0j^2 + k1 sum_j J1j^2 + k1 k2 sum_{2<=i<j} Jij^2."""
    J = lambda mu, nu: realize_generator(n, mu, nu)  # noqa: E731
    k1, k2 = ParamPoly.k1(n), ParamPoly.k2(n)
    c = k2 * J(0, 1) ** 2
    for j in range(2, n + 1):
        c = c + J(0, j) ** 2 + k1 * J(1, j) ** 2
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            c = c + k1 * k2 * J(i, j) ** 2
    return c


def verify_casimir(n: int) -> BracketReport:
    C = casimir_poly(n)
    report = BracketReport(n)
    for pair in generator_pairs(n):
        residual = poly_bracket(C, realize_generator(n, *pair))
        report.pairs_checked += 1
        if not residual.is_zero():
            report.failures.append((("C", pair), residual))
    return report


# vector representation ------------------------------------------------------------


def rep_matrix_poly(n: int, mu: int, nu: int):
    """Exact J_(mu nu) = -c e_(mu nu) + e_(nu mu) with entries in Q[k1, k2]."""
    if not (0 <= mu < nu <= n):
        raise IndexOrder(f"generator indices must satisfy 0 <= mu < nu <= {n}, got ({mu}, {nu})")
    m = [[ParamPoly(n) for _ in range(n + 1)] for _ in range(n + 1)]
    m[mu][nu] = -_coefficient(n, mu, nu)
    m[nu][mu] = ParamPoly.constant(n, 1)
    return m


def _matmul(a, b):
    size = len(a)
    zero = a[0][0] * 0
    out = [[zero for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for k in range(size):
            if a[i][k].is_zero():
                continue
            for j in range(size):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _is_zero_matrix(m) -> bool:
    return all(e.is_zero() for row in m for e in row)


def metric_matrix_poly(n: int):
    k1, k2 = ParamPoly.k1(n), ParamPoly.k2(n)
    diag = [ParamPoly.constant(n, 1), k1] + [k1 * k2] * (n - 1)
    return [[diag[i] if i == j else ParamPoly(n) for j in range(n + 1)] for i in range(n + 1)]


def preserves_metric(m, n: int) -> bool:
    """X^T I_k + I_k X == 0 identically."""
    I = metric_matrix_poly(n)
    mt = [list(col) for col in zip(*m)]
    total = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(_matmul(mt, I), _matmul(I, m))]
    return _is_zero_matrix(total)


def verify_vector_rep(n: int, matrices=None) -> BracketReport:
    """Matrix commutators against the table, plus the invariance of I_k for every generator."""
    mats = matrices or {pair: rep_matrix_poly(n, *pair) for pair in generator_pairs(n)}
    report = BracketReport(n)
    for pair, m in mats.items():
        report.pairs_checked += 1
        if not preserves_metric(m, n):
            report.failures.append((("metric", pair), ParamPoly.constant(n, 1)))
    pairs = list(mats)
    for ia, a in enumerate(pairs):
        for b in pairs[ia + 1 :]:
            comm = _matsub(_matmul(mats[a], mats[b]), _matmul(mats[b], mats[a]))
            rhs = expected_bracket(a, b)
            if rhs is None:
                target = [[ParamPoly(n)] * (n + 1) for _ in range(n + 1)]
            else:
                sign, e1, e2, res = rhs
                coef = sign * ParamPoly.k1(n) ** e1 * ParamPoly.k2(n) ** e2
                target = [[coef * e for e in row] for row in mats[res]]
            diff = _matsub(comm, target)
            report.pairs_checked += 1
            if not _is_zero_matrix(diff):
                worst = next(e for row in diff for e in row if not e.is_zero())
                report.failures.append(((a, b), worst))
    return report
