"""Finite algebras as flat operation tables, plus the subuniverse-closure
engine over finite powers that everything else is built on.

All values are immutable after construction and safe to share across
threads; closure itself runs single-threaded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

# Operations with arity above this are rejected at construction time:
# closure cost grows as |S|**arity per pass and nothing here needs more.
MAX_ARITY = 4

# Encoded pairwise operation tables are only precomputed while they fit
# comfortably in memory ((n**k)**2 entries).
_ENCODED_TABLE_LIMIT = 1_500_000


@dataclass(frozen=True)
class Operation:
    """A named finitary operation given by its flat row-major table."""

    name: str
    arity: int
    table: tuple[int, ...]


@dataclass(frozen=True)
class FiniteAlgebra:
    """An algebra on the universe {0..size-1}.

    `operations` accepts (name, arity, table) triples or Operation values;
    tables are flat row-major with size**arity entries.
    """

    size: int
    operations: tuple[Operation, ...] = ()

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"algebra size must be positive, got {self.size}")
        ops = []
        for op in self.operations:
            if not isinstance(op, Operation):
                name, arity, table = op
                op = Operation(str(name), int(arity), tuple(table))
            ops.append(op)
        object.__setattr__(self, "operations", tuple(ops))
        names = set()
        for op in self.operations:
            if op.name in names:
                raise ValueError(f"duplicate operation name {op.name!r}")
            names.add(op.name)
            if op.arity < 0:
                raise ValueError(f"operation {op.name!r} has negative arity")
            if op.arity > MAX_ARITY:
                raise ValueError(
                    f"operation {op.name!r} has arity {op.arity} above the cap {MAX_ARITY}"
                )
            expected = self.size**op.arity
            if len(op.table) != expected:
                raise ValueError(
                    f"operation {op.name!r} needs {expected} table entries, got {len(op.table)}"
                )
            for v in op.table:
                if not (0 <= v < self.size):
                    raise ValueError(
                        f"operation {op.name!r} table entry {v} outside 0..{self.size - 1}"
                    )

    def operation(self, name: str) -> Operation:
        for op in self.operations:
            if op.name == name:
                return op
        raise KeyError(f"no operation named {name!r}")

    def __repr__(self):
        ops = ", ".join(f"{op.name}/{op.arity}" for op in self.operations)
        return f"FiniteAlgebra(size={self.size}, ops=[{ops}])"


@dataclass(frozen=True)
class QuadSet:
    """A subset of the 4th cartesian power of the universe, as a bitset
    indexed by x*n**3 + y*n**2 + z*n + w."""

    size: int
    bits: int

    def contains(self, x: int, y: int, z: int, w: int) -> bool:
        n = self.size
        return bool(self.bits >> (((x * n + y) * n + z) * n + w) & 1)

    def members(self):
        """Yield (x, y, z, w) tuples in ascending encoding order."""
        n = self.size
        rem = self.bits
        while rem:
            low = rem & -rem
            e = low.bit_length() - 1
            rem ^= low
            w = e % n
            e //= n
            z = e % n
            e //= n
            yield (e // n, e % n, z, w)

    def __len__(self):
        return self.bits.bit_count()

    def __le__(self, other: "QuadSet") -> bool:
        return self.bits & ~other.bits == 0

    @classmethod
    def from_tuples(cls, size: int, tuples) -> "QuadSet":
        bits = 0
        n = size
        for (x, y, z, w) in tuples:
            bits |= 1 << (((x * n + y) * n + z) * n + w)
        return cls(size, bits)


def eval_op(alg: FiniteAlgebra, op_index: int, args) -> int:
    """Apply the op at `op_index` to `args`, by row-major table lookup."""
    if not (0 <= op_index < len(alg.operations)):
        raise ValueError(f"op_index {op_index} out of range")
    op = alg.operations[op_index]
    if len(args) != op.arity:
        raise ValueError(
            f"operation {op.name!r} expects {op.arity} arguments, got {len(args)}"
        )
    idx = 0
    for v in args:
        if not (0 <= v < alg.size):
            raise ValueError(f"argument {v} outside universe 0..{alg.size - 1}")
        idx = idx * alg.size + v
    return op.table[idx]


@lru_cache(maxsize=256)
def _encoded_tables(alg: FiniteAlgebra, power: int):
    """Per-op tables acting directly on encoded k-tuples, or None where the
    arity is above 2 or the table would be too large.

    For a binary op the table T satisfies T[u * n**k + v] = enc(f applied
    coordinatewise to dec(u), dec(v)); it is built by extending the base
    table one coordinate at a time.
    """
    n = alg.size
    total = n**power
    out = []
    for op in alg.operations:
        if op.arity == 1:
            t = list(op.table)
            size_j = n
            for _ in range(power - 1):
                t = [tu * n + fa for tu in t for fa in op.table]
                size_j *= n
            out.append(tuple(t))
        elif op.arity == 2 and total * total <= _ENCODED_TABLE_LIMIT:
            t = list(op.table)
            size_j = n
            base = op.table
            for _ in range(power - 1):
                new_size = size_j * n
                newt = [0] * (new_size * new_size)
                for u in range(size_j):
                    urow = t[u * size_j : (u + 1) * size_j]
                    for a in range(n):
                        arow = base[a * n : (a + 1) * n]
                        dst = (u * n + a) * new_size
                        for v in range(size_j):
                            hi = urow[v] * n
                            off = dst + v * n
                            for b in range(n):
                                newt[off + b] = hi + arow[b]
                t = newt
                size_j = new_size
            out.append(tuple(t))
        else:
            out.append(None)
    return tuple(out)


def subuniverse_closure(alg: FiniteAlgebra, power: int, generators) -> set:
    """Smallest set of k-tuples (k = `power`) containing `generators` and
    closed under every operation of `alg` applied coordinatewise.

    Worklist saturation: a tuple is processed once, against all tuples
    added no later than itself, so each argument combination is applied
    exactly once.  Nullary operations contribute their constant diagonal
    tuple; an empty generator set with no nullary operations yields the
    empty set.
    """
    if power < 1:
        raise ValueError("power must be positive")
    n = alg.size
    total = n**power
    seen = bytearray(total)
    members = []  # encoded, in addition order

    def add(enc):
        if not seen[enc]:
            seen[enc] = 1
            members.append(enc)

    for g in generators:
        g = tuple(g)
        if len(g) != power:
            raise ValueError(f"generator {g} is not a {power}-tuple")
        enc = 0
        for v in g:
            if not (0 <= v < n):
                raise ValueError(f"generator entry {v} outside universe 0..{n - 1}")
            enc = enc * n + v
        add(enc)
    for op in alg.operations:
        if op.arity == 0:
            enc = 0
            for _ in range(power):
                enc = enc * n + op.table[0]
            add(enc)

    enc_tables = _encoded_tables(alg, power)
    ops = [
        (op, enc_tables[i])
        for i, op in enumerate(alg.operations)
        if op.arity >= 1
    ]

    # dec[e] is only materialized if some op needs the generic path
    dec = None
    if any(t is None for _, t in ops):
        dec = []
        for e in range(total):
            tup = []
            r = e
            for _ in range(power):
                tup.append(r % n)
                r //= n
            dec.append(tuple(reversed(tup)))

    i = 0
    while i < len(members):
        ei = members[i]
        for op, table in ops:
            if table is not None and op.arity == 1:
                add(table[ei])
            elif table is not None:
                base = ei * total
                for j in range(i + 1):
                    ej = members[j]
                    add(table[base + ej])
                    add(table[ej * total + ei])
            else:
                a = op.arity
                optable = op.table
                for idxs in itertools.product(range(i + 1), repeat=a):
                    if max(idxs) != i:
                        continue
                    args = [dec[members[j]] for j in idxs]
                    enc = 0
                    for coords in zip(*args):
                        pos = 0
                        for v in coords:
                            pos = pos * n + v
                        enc = enc * n + optable[pos]
                    add(enc)
        i += 1

    result = set()
    for e in members:
        tup = []
        r = e
        for _ in range(power):
            tup.append(r % n)
            r //= n
        result.add(tuple(reversed(tup)))
    return result
