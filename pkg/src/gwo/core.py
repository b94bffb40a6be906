"""Finite groups with operations stored as explicit tables.

Elements are the integers ``0..n-1``.  Every table is a read-only numpy
array, so all exhaustive identity checks are vectorised fancy-indexing
expressions rather than Python triple loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BoundExceededError,
    NotIdealError,
    SignatureMismatchError,
    StructureError,
)

DEFAULT_BOUND = 16


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=np.int64, copy=True)
    out.setflags(write=False)
    return out


# --------------------------------------------------------------------------
# signature
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OpSignature:
    """Operation alphabet: binary symbols (with ``+``), unary symbols (with ``-``)
    and the involution pairing each extra binary symbol with its opposite."""

    binary_symbols: tuple[str, ...] = ("+",)
    unary_symbols: tuple[str, ...] = ("-",)
    pairing: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "binary_symbols", tuple(self.binary_symbols))
        object.__setattr__(self, "unary_symbols", tuple(self.unary_symbols))
        if isinstance(self.pairing, Mapping):
            pairs = tuple(sorted(self.pairing.items()))
        else:
            pairs = tuple(sorted(tuple(p) for p in self.pairing))
        object.__setattr__(self, "pairing", pairs)

        if "+" not in self.binary_symbols:
            raise StructureError("binary symbols must contain '+'")
        if "-" not in self.unary_symbols:
            raise StructureError("unary symbols must contain '-'")
        if len(set(self.binary_symbols)) != len(self.binary_symbols):
            raise StructureError("duplicate binary symbol")
        if len(set(self.unary_symbols)) != len(self.unary_symbols):
            raise StructureError("duplicate unary symbol")
        pmap = dict(pairs)
        extra = set(self.extra_binary)
        if set(pmap) != extra:
            raise StructureError(
                f"pairing must be defined exactly on {sorted(extra)}, got {sorted(pmap)}"
            )
        for sym, opp in pmap.items():
            if opp not in extra:
                raise StructureError(f"opposite of {sym!r} is {opp!r}, not an operation")
            if pmap[opp] != sym:
                raise StructureError(f"pairing is not an involution at {sym!r}")

    @property
    def extra_binary(self) -> tuple[str, ...]:
        return tuple(s for s in self.binary_symbols if s != "+")

    @property
    def extra_unary(self) -> tuple[str, ...]:
        return tuple(s for s in self.unary_symbols if s != "-")

    def opposite(self, symbol: str) -> str:
        return dict(self.pairing)[symbol]

    @classmethod
    def groups(cls) -> "OpSignature":
        return cls()

    @classmethod
    def rings(cls, symbol: str = "*") -> "OpSignature":
        return cls(("+", symbol), ("-",), ((symbol, symbol),))


GROUPS = OpSignature.groups()
RINGS = OpSignature.rings()


# --------------------------------------------------------------------------
# validation report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def to_dict(self):
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


@dataclass
class ValidationReport:
    """List of violated axioms; empty means valid."""

    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom, witness, detail=""):
        self.violations.append(Violation(axiom, tuple(int(w) for w in witness), detail))

    def extend(self, other: "ValidationReport", prefix: str = ""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.witness, v.detail))

    def axioms(self) -> list[str]:
        return [v.axiom for v in self.violations]

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def to_dict(self):
        return {"valid": self.ok, "violations": [v.to_dict() for v in self.violations]}


def _check(report: ValidationReport, axiom: str, holds: np.ndarray, detail=""):
    """Record the lexicographically least failing index tuple, if any."""
    holds = np.asarray(holds)
    if holds.all():
        return True
    witness = tuple(np.argwhere(~holds)[0])
    report.add(axiom, witness, detail)
    return False


# --------------------------------------------------------------------------
# groups with operations
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupWithOps:
    """A finite group with operations.

    Construction checks only shapes and index ranges; the axioms are checked
    by :func:`validate_gwo`, so invalid candidates can be represented.
    ``labels`` optionally records, per element, an index in some parent
    structure (coset representatives for quotients).
    """

    signature: OpSignature
    order: int
    zero: int
    add_table: np.ndarray
    neg_table: np.ndarray
    binary_tables: Mapping[str, np.ndarray] = field(default_factory=dict)
    unary_tables: Mapping[str, np.ndarray] = field(default_factory=dict)
    name: str = ""
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        n = self.order
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise StructureError(f"order must be a positive integer, got {n!r}")
        object.__setattr__(self, "order", int(n))
        if not 0 <= self.zero < n:
            raise StructureError(f"zero index {self.zero} out of range", index=self.zero)
        object.__setattr__(self, "zero", int(self.zero))
        object.__setattr__(self, "add_table", _table(self.add_table, (n, n), "+"))
        object.__setattr__(self, "neg_table", _table(self.neg_table, (n,), "-"))
        sig = self.signature
        if set(self.binary_tables) != set(sig.extra_binary):
            raise StructureError(
                f"binary tables {sorted(self.binary_tables)} do not match "
                f"signature {list(sig.extra_binary)}"
            )
        if set(self.unary_tables) != set(sig.extra_unary):
            raise StructureError(
                f"unary tables {sorted(self.unary_tables)} do not match "
                f"signature {list(sig.extra_unary)}"
            )
        object.__setattr__(
            self,
            "binary_tables",
            {s: _table(self.binary_tables[s], (n, n), s) for s in sig.extra_binary},
        )
        object.__setattr__(
            self,
            "unary_tables",
            {s: _table(self.unary_tables[s], (n,), s) for s in sig.extra_unary},
        )
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
            if len(self.labels) != n:
                raise StructureError("labels must have one entry per element")

    # arithmetic helpers -------------------------------------------------
    def add(self, a, b):
        return int(self.add_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def op(self, symbol, a, b):
        if symbol == "+":
            return self.add(a, b)
        return int(self.binary_tables[symbol][a, b])

    def unary(self, symbol, a):
        if symbol == "-":
            return self.neg(a)
        return int(self.unary_tables[symbol][a])

    def sum(self, *terms):
        acc = self.zero
        for t in terms:
            acc = int(self.add_table[acc, t])
        return acc

    @property
    def elements(self) -> range:
        return range(self.order)

    def all_binary(self) -> dict[str, np.ndarray]:
        return {"+": self.add_table, **self.binary_tables}

    def all_unary(self) -> dict[str, np.ndarray]:
        return {"-": self.neg_table, **self.unary_tables}

    def element_order(self, a) -> int:
        k, x = 1, a
        while x != self.zero:
            x = self.add(x, a)
            k += 1
            if k > self.order:
                raise StructureError("element has no finite additive order")
        return k

    def is_abelian(self) -> bool:
        return bool((self.add_table == self.add_table.T).all())

    def is_singular(self) -> bool:
        """Abelian with every extra product identically zero."""
        return self.is_abelian() and all(
            (t == self.zero).all() for t in self.binary_tables.values()
        )

    def same_tables(self, other: "GroupWithOps") -> bool:
        return (
            self.signature == other.signature
            and self.order == other.order
            and self.zero == other.zero
            and np.array_equal(self.add_table, other.add_table)
            and np.array_equal(self.neg_table, other.neg_table)
            and all(
                np.array_equal(self.binary_tables[s], other.binary_tables[s])
                for s in self.binary_tables
            )
            and all(
                np.array_equal(self.unary_tables[s], other.unary_tables[s])
                for s in self.unary_tables
            )
        )

    def replace(self, **changes) -> "GroupWithOps":
        fields = dict(
            signature=self.signature,
            order=self.order,
            zero=self.zero,
            add_table=self.add_table,
            neg_table=self.neg_table,
            binary_tables=self.binary_tables,
            unary_tables=self.unary_tables,
            name=self.name,
            labels=self.labels,
        )
        fields.update(changes)
        return GroupWithOps(**fields)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<GroupWithOps{label} order={self.order} ops={list(self.signature.binary_symbols)}>"


def _table(data, shape, symbol) -> np.ndarray:
    try:
        arr = np.array(data, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"table {symbol!r} is not rectangular: {exc}") from None
    if arr.shape != shape:
        raise StructureError(f"table {symbol!r} has shape {arr.shape}, expected {shape}")
    n = shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        pos = tuple(int(i) for i in bad[0])
        raise StructureError(
            f"table {symbol!r} entry {pos} = {int(arr[pos])} out of range 0..{n - 1}",
            index=int(arr[pos]),
        )
    arr.setflags(write=False)
    return arr


def from_group_table(add_table, *, zero=None, name="") -> GroupWithOps:
    """Plain group (no extra operations) from its Cayley table."""
    add = np.array(add_table, dtype=np.int64)
    n = len(add)
    if zero is None:
        zero = next(
            (e for e in range(n) if (add[e] == np.arange(n)).all()), 0
        )
    neg = [next((b for b in range(n) if add[a, b] == zero), 0) for a in range(n)]
    return GroupWithOps(GROUPS, n, zero, add, neg, name=name)


def cyclic_group(n: int, name=None) -> GroupWithOps:
    r = np.arange(n)
    return GroupWithOps(
        GROUPS, n, 0, (r[:, None] + r[None, :]) % n, (-r) % n, name=name or f"Z{n}"
    )


def cyclic_ring(n: int, *, zero_mult=False, symbol="*", scalars=(), name=None) -> GroupWithOps:
    """Z_n with multiplication mod n (or the zero product).

    ``scalars`` adds unary operations ``x -> k x`` named ``k*``; these are
    the module-style unary operations allowed by the axioms.
    """
    r = np.arange(n)
    mult = np.zeros((n, n), dtype=np.int64) if zero_mult else (r[:, None] * r[None, :]) % n
    unary = tuple(f"{k}{symbol}" for k in scalars)
    sig = OpSignature(("+", symbol), ("-",) + unary, ((symbol, symbol),))
    if name is None:
        name = f"Z{n}" + ("0" if zero_mult else "") + "".join(f"[{k}]" for k in scalars)
    return GroupWithOps(
        sig,
        n,
        0,
        (r[:, None] + r[None, :]) % n,
        (-r) % n,
        {symbol: mult},
        {f"{k}{symbol}": (k * r) % n for k in scalars},
        name=name,
    )


def trivial_gwo(signature: OpSignature = GROUPS, name="0") -> GroupWithOps:
    zeros2 = [[0]]
    return GroupWithOps(
        signature,
        1,
        0,
        zeros2,
        [0],
        {s: zeros2 for s in signature.extra_binary},
        {s: [0] for s in signature.extra_unary},
        name=name,
    )


# --------------------------------------------------------------------------
# axioms
# --------------------------------------------------------------------------


def validate_gwo(G: GroupWithOps) -> ValidationReport:
    """Check the group laws and the identity list of the category exhaustively."""
    rep = ValidationReport()
    n, z = G.order, G.zero
    A, N = G.add_table, G.neg_table
    r = np.arange(n)
    _check(rep, "left identity", A[z, :] == r)
    _check(rep, "right identity", A[:, z] == r)
    _check(rep, "right inverse", A[r, N] == z)
    _check(rep, "left inverse", A[N, r] == z)
    lhs = A[A[:, :, None], r[None, None, :]]
    rhs = A[r[:, None, None], A[None, :, :]]
    _check(rep, "associativity", lhs == rhs)
    sig = G.signature
    for s in sig.extra_binary:
        M = G.binary_tables[s]
        opp = G.binary_tables[sig.opposite(s)]
        lhs = M[r[:, None, None], A[None, :, :]]
        rhs = A[M[:, :, None], M[:, None, :]]
        _check(rep, f"distributivity[{s}]", lhs == rhs)
        _check(rep, f"opposite[{s}]", opp == M.T)
    for w in sig.extra_unary:
        W = G.unary_tables[w]
        _check(rep, f"additive[{w}]", W[A] == A[W[:, None], W[None, :]])
        for s in sig.extra_binary:
            M = G.binary_tables[s]
            _check(rep, f"compatible[{w},{s}]", M[W[:, None], r[None, :]] == W[M])
    return rep


# --------------------------------------------------------------------------
# morphisms
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: GroupWithOps
    cod: GroupWithOps
    map: np.ndarray

    def __post_init__(self):
        if self.dom.signature != self.cod.signature:
            raise SignatureMismatchError("domain and codomain signatures differ")
        object.__setattr__(self, "map", _map(self.map, self.dom.order, self.cod.order))

    def __call__(self, a):
        return int(self.map[a])

    def then(self, other: "Morphism") -> "Morphism":
        """Composite ``other ∘ self``."""
        return Morphism(self.dom, other.cod, other.map[self.map])

    def image_of(self, subset: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted({int(self.map[x]) for x in subset}))

    def preimage_of(self, subset: Iterable[int]) -> tuple[int, ...]:
        mask = np.zeros(self.cod.order, dtype=bool)
        mask[list(subset)] = True
        return tuple(int(x) for x in np.flatnonzero(mask[self.map]))

    def is_injective(self) -> bool:
        return len(set(self.map.tolist())) == self.dom.order

    def is_surjective(self) -> bool:
        return len(set(self.map.tolist())) == self.cod.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse_map(self) -> "Morphism":
        inv = np.empty(self.cod.order, dtype=np.int64)
        inv[self.map] = np.arange(self.dom.order)
        return Morphism(self.cod, self.dom, inv)

    @property
    def components(self):
        return (self,)

    def first_violation(self):
        return morphism_violation(self)

    @classmethod
    def identity(cls, G: GroupWithOps) -> "Morphism":
        return cls(G, G, np.arange(G.order))

    @classmethod
    def zero(cls, G: GroupWithOps, H: GroupWithOps) -> "Morphism":
        return cls(G, H, np.full(G.order, H.zero))


def _map(data, n, m) -> np.ndarray:
    return _table_map(data, n, m)


def _table_map(data, n, m):
    arr = np.array(data, dtype=np.int64)
    if arr.shape != (n,):
        raise StructureError(f"map has shape {arr.shape}, expected ({n},)")
    bad = np.flatnonzero((arr < 0) | (arr >= m))
    if len(bad):
        raise StructureError(
            f"map entry {int(bad[0])} = {int(arr[bad[0]])} out of range 0..{m - 1}",
            index=int(arr[bad[0]]),
        )
    arr.setflags(write=False)
    return arr


def morphism_violation(f: Morphism) -> Violation | None:
    """First preservation equation that fails, or ``None``."""
    G, H, m = f.dom, f.cod, f.map
    rep = ValidationReport()
    if m[G.zero] != H.zero:
        return Violation("zero", (G.zero,), f"{G.zero} -> {int(m[G.zero])} != {H.zero}")
    for s, T in G.all_binary().items():
        HT = H.add_table if s == "+" else H.binary_tables[s]
        if not _check(rep, f"preserves[{s}]", m[T] == HT[m[:, None], m[None, :]]):
            return rep.violations[0]
    for w, W in G.all_unary().items():
        HW = H.neg_table if w == "-" else H.unary_tables[w]
        if not _check(rep, f"preserves[{w}]", m[W] == HW[m]):
            return rep.violations[0]
    return None


def is_morphism(f: Morphism) -> tuple[bool, Violation | None]:
    if f.dom.signature != f.cod.signature:
        raise SignatureMismatchError("domain and codomain signatures differ")
    v = morphism_violation(f)
    return v is None, v


def is_isomorphism(f: Morphism) -> bool:
    return (
        f.is_bijective()
        and morphism_violation(f) is None
        and morphism_violation(f.inverse_map()) is None
    )


# --------------------------------------------------------------------------
# subsets, subobjects, ideals
# --------------------------------------------------------------------------


def _mask(G: GroupWithOps, X: Iterable[int]) -> np.ndarray:
    X = list(X)
    for x in X:
        if not 0 <= x < G.order:
            raise StructureError(f"element {x} out of range 0..{G.order - 1}", index=x)
    mask = np.zeros(G.order, dtype=bool)
    mask[X] = True
    return mask


def is_subobject(G: GroupWithOps, X: Iterable[int]) -> bool:
    mask = _mask(G, X)
    idx = np.flatnonzero(mask)
    if not mask[G.zero]:
        return False
    sub = np.ix_(idx, idx)
    for T in G.all_binary().values():
        if not mask[T[sub]].all():
            return False
    for W in G.all_unary().values():
        if not mask[W[idx]].all():
            return False
    return True


def is_ideal(G: GroupWithOps, X: Iterable[int]) -> bool:
    mask = _mask(G, X)
    idx = np.flatnonzero(mask)
    if not is_subobject(G, idx):
        return False
    A = G.add_table
    conj = A[A[:, idx], G.neg_table[:, None]]  # g + x - g
    if not mask[conj].all():
        return False
    for M in G.binary_tables.values():
        if not mask[M[:, idx]].all():
            return False
    return True


@dataclass(frozen=True, eq=False)
class SubsetWitness:
    parent: GroupWithOps
    elements: tuple[int, ...]
    is_subobject: bool
    is_ideal: bool

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in set(self.elements)


def subset_witness(G: GroupWithOps, X: Iterable[int]) -> SubsetWitness:
    elems = tuple(sorted(set(int(x) for x in X)))
    sub = is_subobject(G, elems)
    return SubsetWitness(G, elems, sub, sub and is_ideal(G, elems))


def restrict(G: GroupWithOps, X: Iterable[int], name="") -> tuple[GroupWithOps, Morphism]:
    """The subobject on ``X`` as a structure in its own right, with its inclusion."""
    elems = sorted(set(int(x) for x in X))
    if not is_subobject(G, elems):
        raise StructureError(f"{elems} is not a subobject")
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    idx = np.array(elems)
    sub = np.ix_(idx, idx)
    H = GroupWithOps(
        G.signature,
        len(elems),
        int(pos[G.zero]),
        pos[G.add_table[sub]],
        pos[G.neg_table[idx]],
        {s: pos[T[sub]] for s, T in G.binary_tables.items()},
        {w: pos[W[idx]] for w, W in G.unary_tables.items()},
        name=name,
    )
    return H, Morphism(H, G, idx)


# --------------------------------------------------------------------------
# quotients, kernels, products
# --------------------------------------------------------------------------


def coset_classes(G: GroupWithOps, N: Iterable[int]) -> tuple[np.ndarray, list[int]]:
    """Class index of each element and the canonical (least) representatives."""
    idx = np.array(sorted(set(N)), dtype=np.int64)
    cls = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for a in range(G.order):
        if cls[a] >= 0:
            continue
        cls[G.add_table[a, idx]] = len(reps)
        reps.append(a)
    return cls, reps


def quotient_gwo(G: GroupWithOps, N: Iterable[int], name="") -> tuple[GroupWithOps, Morphism]:
    """``G/N`` and the projection; classes are ordered by least representative."""
    N = tuple(sorted(set(N)))
    if not is_ideal(G, N):
        raise NotIdealError(f"{list(N)} is not an ideal")
    cls, reps = coset_classes(G, N)
    r = np.array(reps)
    sub = np.ix_(r, r)
    Q = GroupWithOps(
        G.signature,
        len(reps),
        int(cls[G.zero]),
        cls[G.add_table[sub]],
        cls[G.neg_table[r]],
        {s: cls[T[sub]] for s, T in G.binary_tables.items()},
        {w: cls[W[r]] for w, W in G.unary_tables.items()},
        name=name or (f"{G.name}/{len(N)}" if G.name else ""),
        labels=reps,
    )
    return Q, Morphism(G, Q, cls)


def kernel_and_image(f: Morphism) -> tuple[SubsetWitness, SubsetWitness]:
    ker = np.flatnonzero(f.map == f.cod.zero)
    img = sorted(set(f.map.tolist()))
    return subset_witness(f.dom, ker), subset_witness(f.cod, img)


def pair_index(a, b, nb):
    """Carrier encoding of pairs ``(a, b)``: ``a * |B| + b``."""
    return a * nb + b


def direct_product(A: GroupWithOps, B: GroupWithOps, name="") -> GroupWithOps:
    if A.signature != B.signature:
        raise SignatureMismatchError("factors have different signatures")
    na, nb = A.order, B.order
    ea = np.repeat(np.arange(na), nb)
    eb = np.tile(np.arange(nb), na)

    def binary(TA, TB):
        return TA[ea[:, None], ea[None, :]] * nb + TB[eb[:, None], eb[None, :]]

    return GroupWithOps(
        A.signature,
        na * nb,
        A.zero * nb + B.zero,
        binary(A.add_table, B.add_table),
        A.neg_table[ea] * nb + B.neg_table[eb],
        {s: binary(A.binary_tables[s], B.binary_tables[s]) for s in A.binary_tables},
        {w: A.unary_tables[w][ea] * nb + B.unary_tables[w][eb] for w in A.unary_tables},
        name=name or (f"{A.name}x{B.name}" if A.name and B.name else ""),
    )


def product_projections(A, B, P) -> tuple[Morphism, Morphism]:
    nb = B.order
    e = np.arange(P.order)
    return Morphism(P, A, e // nb), Morphism(P, B, e % nb)


# --------------------------------------------------------------------------
# closures, generators, enumeration
# --------------------------------------------------------------------------


def subobject_closure(G: GroupWithOps, X: Iterable[int]) -> frozenset[int]:
    return _closure(G, X, ideal=False)


def ideal_closure(G: GroupWithOps, X: Iterable[int]) -> frozenset[int]:
    return _closure(G, X, ideal=True)


def _closure(G, X, ideal):
    mask = _mask(G, X)
    mask[G.zero] = True
    binaries = list(G.all_binary().values())
    unaries = list(G.all_unary().values())
    A, N = G.add_table, G.neg_table
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        sub = np.ix_(idx, idx)
        for T in binaries:
            new[T[sub].ravel()] = True
        for W in unaries:
            new[W[idx]] = True
        if ideal:
            new[A[A[:, idx], N[:, None]].ravel()] = True
            for M in G.binary_tables.values():
                new[M[:, idx].ravel()] = True
                new[M[idx, :].ravel()] = True
        if (new == mask).all():
            return frozenset(int(x) for x in idx)
        mask = new


def generators(G: GroupWithOps) -> list[int]:
    """A small generating set, picked greedily by decreasing additive order."""
    by_order = sorted(G.elements, key=lambda a: (-G.element_order(a), a))
    gens: list[int] = []
    span = subobject_closure(G, [])
    for a in by_order:
        if a not in span:
            gens.append(a)
            span = subobject_closure(G, span | {a})
            if len(span) == G.order:
                break
    return gens


def _lattice(G, closure, bound):
    if bound is not None and G.order > bound:
        raise BoundExceededError(
            f"order {G.order} exceeds enumeration bound {bound}; pass a larger bound explicitly"
        )
    # structures are immutable, so the lattice is computed once per instance
    cache = G.__dict__.setdefault("_lattices", {})
    key = closure.__name__
    if key not in cache:
        cache[key] = _joins(G, closure)
    return cache[key]


def _joins(G, closure):
    """Every closed subset is a join of principal ones, so walk upwards by
    joining with the distinct principal closures only."""
    bottom = closure(G, [])
    principal = sorted({closure(G, [x]) for x in G.elements}, key=lambda s: (len(s), sorted(s)))
    if closure is ideal_closure:
        # the join of two ideals is their sum
        def join(I, P):
            return frozenset(G.add_table[np.ix_(sorted(I), sorted(P))].ravel().tolist())
    else:
        def join(I, P):
            return closure(G, I | P)
    found = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for I in frontier:
            for P in principal:
                if P <= I:
                    continue
                J = join(I, P)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def enumerate_ideals(G: GroupWithOps, bound: int | None = DEFAULT_BOUND) -> list[SubsetWitness]:
    """Every ideal of ``G`` exactly once, sorted by size then elements."""
    return [SubsetWitness(G, tuple(sorted(I)), True, True) for I in _lattice(G, ideal_closure, bound)]


def enumerate_subobjects(G: GroupWithOps, bound: int | None = DEFAULT_BOUND) -> list[SubsetWitness]:
    out = []
    for X in _lattice(G, subobject_closure, bound):
        elems = tuple(sorted(X))
        out.append(SubsetWitness(G, elems, True, is_ideal(G, elems)))
    return out


# --------------------------------------------------------------------------
# morphism search
# --------------------------------------------------------------------------


def _extend(G: GroupWithOps, H: GroupWithOps, assign: dict[int, int], injective: bool):
    """Close a partial assignment under every operation; ``None`` on conflict."""
    m = dict(assign)
    used = {}
    for x, y in m.items():
        if injective and y in used and used[y] != x:
            return None
        used[y] = x
    gbin = [(G.add_table, H.add_table)] + [
        (G.binary_tables[s], H.binary_tables[s]) for s in G.signature.extra_binary
    ]
    gun = [(G.neg_table, H.neg_table)] + [
        (G.unary_tables[w], H.unary_tables[w]) for w in G.signature.extra_unary
    ]

    def put(x, y):
        old = m.get(x)
        if old is not None:
            return old == y
        if injective and y in used:
            return False
        m[x] = y
        used[y] = x
        work.append(x)
        return True

    if G.zero in m and m[G.zero] != H.zero:
        return None
    work = list(m)
    if not put(G.zero, H.zero):
        return None
    done: list[int] = []
    while work:
        x = work.pop()
        done.append(x)
        for GT, HT in gun:
            if not put(int(GT[x]), int(HT[m[x]])):
                return None
        for y in done:
            for GT, HT in gbin:
                if not put(int(GT[x, y]), int(HT[m[x], m[y]])):
                    return None
                if not put(int(GT[y, x]), int(HT[m[y], m[x]])):
                    return None
    return m


def find_morphisms(
    G: GroupWithOps,
    H: GroupWithOps,
    *,
    bijective=False,
    candidates=None,
    limit: int | None = None,
):
    """Backtracking search for morphisms ``G -> H``.

    ``candidates(g)`` may restrict the images tried for a generator ``g``.
    Generators are mapped one at a time and the assignment is closed under
    all operations before the next choice, so the search is complete.
    """
    if G.signature != H.signature:
        raise SignatureMismatchError("signatures differ")
    if bijective and G.order != H.order:
        return []
    gens = generators(G)
    horder = {h: H.element_order(h) for h in H.elements}
    results = []

    def options(g):
        pool = candidates(g) if candidates else H.elements
        og = G.element_order(g)
        if bijective:
            return [h for h in pool if horder[h] == og]
        return [h for h in pool if og % horder[h] == 0]

    def rec(i, assign):
        if limit is not None and len(results) >= limit:
            return
        if i == len(gens):
            f = Morphism(G, H, [assign[g] for g in G.elements])
            if morphism_violation(f) is not None:
                return
            if bijective and not is_isomorphism(f):
                return
            results.append(f)
            return
        g = gens[i]
        if g in assign:
            rec(i + 1, assign)
            return
        for h in options(g):
            ext = _extend(G, H, {**assign, g: h}, bijective)
            if ext is not None:
                rec(i + 1, ext)

    start = _extend(G, H, {}, bijective)
    if start is not None:
        rec(0, start)
    return results


def find_isomorphism(A: GroupWithOps, B: GroupWithOps) -> Morphism | None:
    if A.order != B.order or A.signature != B.signature:
        return None
    if sorted(A.element_order(a) for a in A.elements) != sorted(
        B.element_order(b) for b in B.elements
    ):
        return None
    found = find_morphisms(A, B, bijective=True, limit=1)
    return found[0] if found else None


def elements_of(X: SubsetWitness | Sequence[int]) -> tuple[int, ...]:
    if isinstance(X, SubsetWitness):
        return X.elements
    return tuple(sorted(set(int(x) for x in X)))
