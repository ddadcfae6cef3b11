"""Mixed tensors with p vector slots and q one-form slots.

Components are keyed by (lower, upper) index tuples in written order,
T_{l_1..l_p}^{u_1..u_q}, and stand for the formal string

    dx^{l_p} ... dx^{l_1} T d_{u_q} ... d_{u_1}

so that evaluation on coordinate fields and forms returns the component
itself. A tensor of parity t has components of parity t + sum(l) + sum(u).
"""

from __future__ import annotations

from itertools import product
from typing import Mapping, Sequence

from oddcon.algebra.grassmann import ChartSignature, GradedPoly
from oddcon.errors import ChartMismatchError, ParityError, ValenceError
from oddcon.geometry.changes import CoordinateChange
from oddcon.geometry.fields import OneForm, VectorField

Key = tuple[tuple[int, ...], tuple[int, ...]]


class MixedTensor:
    """A homogeneous (p, q) tensor stored sparsely."""

    __slots__ = ("chart", "valence", "parity", "components")

    def __init__(
        self,
        chart: ChartSignature,
        valence: tuple[int, int],
        parity: int,
        components: Mapping[Key, GradedPoly],
    ):
        p, q = valence
        par = chart.parities
        clean: dict[Key, GradedPoly] = {}
        for (lower, upper), value in components.items():
            lower, upper = tuple(lower), tuple(upper)
            if len(lower) != p or len(upper) != q:
                raise ValenceError(f"Key {(lower, upper)} does not match valence {valence}")
            if any(not 0 <= i < chart.dim for i in lower + upper):
                raise ChartMismatchError(f"Index out of range in key {(lower, upper)}")
            if value.chart != chart:
                raise ChartMismatchError(f"Component lives on {value.chart}, not {chart}")
            expected = (parity + sum(par[i] for i in lower + upper)) % 2
            if not value.has_parity(expected):
                raise ParityError(
                    f"Component {(lower, upper)} must have parity {expected} for a tensor "
                    f"of parity {parity}"
                )
            if not value.is_zero:
                clean[(lower, upper)] = value
        self.chart = chart
        self.valence = (p, q)
        self.parity = parity
        self.components = clean

    @classmethod
    def from_vector_field(cls, X: VectorField) -> MixedTensor:
        """A vector field as a (0, 1) tensor."""
        return cls(
            X.chart,
            (0, 1),
            X.homogeneous_parity(),
            {((), (a,)): c for a, c in enumerate(X.components)},
        )

    @classmethod
    def from_oneform(cls, alpha: OneForm) -> MixedTensor:
        """A one-form as a (1, 0) tensor."""
        return cls(
            alpha.chart,
            (1, 0),
            alpha.homogeneous_parity(),
            {((a,), ()): c for a, c in enumerate(alpha.components)},
        )

    @classmethod
    def identity(cls, chart: ChartSignature) -> MixedTensor:
        """The (1, 1) identity, T_a^b = delta_a^b."""
        one = GradedPoly.constant(chart, 1)
        return cls(chart, (1, 1), 0, {((a,), (a,)): one for a in range(chart.dim)})

    def component(self, lower: Sequence[int], upper: Sequence[int]) -> GradedPoly:
        return self.components.get((tuple(lower), tuple(upper)), GradedPoly.zero(self.chart))

    def as_vector_field(self) -> VectorField:
        if self.valence != (0, 1):
            raise ValenceError(f"A {self.valence} tensor is not a vector field")
        return VectorField(
            self.chart, [self.component((), (a,)) for a in range(self.chart.dim)], self.parity
        )

    def as_oneform(self) -> OneForm:
        if self.valence != (1, 0):
            raise ValenceError(f"A {self.valence} tensor is not a one-form")
        return OneForm(
            self.chart, [self.component((a,), ()) for a in range(self.chart.dim)], self.parity
        )

    def evaluate(self, vectors: Sequence[VectorField], forms: Sequence[OneForm]) -> GradedPoly:
        return evaluate(self, vectors, forms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedTensor):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.valence == other.valence
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.chart, self.valence, frozenset(self.components.items())))

    def __repr__(self) -> str:
        return f"MixedTensor({self.valence}, parity={self.parity}, {len(self.components)} terms)"


def evaluate(
    T: MixedTensor, vectors: Sequence[VectorField], forms: Sequence[OneForm]
) -> GradedPoly:
    """T(Y_1..Y_p; alpha^1..alpha^q) for homogeneous arguments.

    Each Y_j^{l_j} is contracted with dx^{l_j} and each alpha^j_{u_j} with
    d_{u_j}; the sign collects the Koszul signs of moving the coordinate
    basis elements past the coefficients already in place.
    """
    p, q = T.valence
    if len(vectors) != p or len(forms) != q:
        raise ValenceError(f"A {T.valence} tensor takes {p} fields and {q} forms")
    for arg in list(vectors) + list(forms):
        if arg.chart != T.chart:
            raise ChartMismatchError(f"Argument lives on {arg.chart}, tensor on {T.chart}")
    par = T.chart.parities
    ys = [Y.homogeneous_parity() for Y in vectors]
    alphas = [a.homogeneous_parity() for a in forms]
    result = GradedPoly.zero(T.chart)
    for (lower, upper), value in T.components.items():
        factors = [Y.components[l] for Y, l in zip(vectors, lower)]
        tail = [a.components[u] for a, u in zip(forms, upper)]
        if any(f.is_zero for f in factors) or any(f.is_zero for f in tail):
            continue
        sign = 0
        for i in range(p):
            sign += par[lower[i]] * sum(ys[j] + par[lower[j]] for j in range(i + 1, p))
        for j in range(q):
            sign += par[upper[j]] * sum(alphas[i] + par[upper[i]] for i in range(j))
        term = GradedPoly.constant(T.chart, -1 if sign % 2 else 1)
        for f in factors:
            term = term * f
        term = term * value
        for f in tail:
            term = term * f
        result = result + term
    return result


def transform_tensor(T: MixedTensor, change: CoordinateChange) -> MixedTensor:
    """Components of T in the new coordinates.

    T' = (-1)^chi J(l_p)..J(l_1) T K(u_q)..K(u_1) with
    chi = sum_r (l_r + l'_r) sum_{s<r} l'_s + sum_r (u_r + u'_r) sum_{s>r} u'_s.
    Slots are converted one at a time: lower slots from the first, each
    multiplying on the left, upper slots from the last, each on the right.
    """
    if T.chart != change.source:
        raise ChartMismatchError(f"Tensor lives on {T.chart}, change starts on {change.source}")
    p, q = T.valence
    par = T.chart.parities
    dim = T.chart.dim
    J, K = change.inverse_jacobian, change.jacobian
    comps = {key: change.pull(value) for key, value in T.components.items()}

    def accumulate(store: dict, key: Key, value: GradedPoly) -> None:
        total = store.get(key)
        store[key] = value if total is None else total + value

    for r in range(p):
        step: dict[Key, GradedPoly] = {}
        for (lower, upper), value in comps.items():
            prior = sum(par[lower[s]] for s in range(r))
            old = lower[r]
            for new in range(dim):
                if J[new][old].is_zero:
                    continue
                term = J[new][old] * value
                if (par[old] + par[new]) * prior % 2:
                    term = -term
                accumulate(step, (lower[:r] + (new,) + lower[r + 1 :], upper), term)
        comps = step
    for r in reversed(range(q)):
        step = {}
        for (lower, upper), value in comps.items():
            later = sum(par[upper[s]] for s in range(r + 1, q))
            old = upper[r]
            for new in range(dim):
                if K[old][new].is_zero:
                    continue
                term = value * K[old][new]
                if (par[old] + par[new]) * later % 2:
                    term = -term
                accumulate(step, (lower, upper[:r] + (new,) + upper[r + 1 :]), term)
        comps = step
    return MixedTensor(change.target, T.valence, T.parity, comps)


def basis_keys(chart: ChartSignature, valence: tuple[int, int]):
    """Every (lower, upper) key of the given valence."""
    p, q = valence
    for lower in product(range(chart.dim), repeat=p):
        for upper in product(range(chart.dim), repeat=q):
            yield lower, upper
