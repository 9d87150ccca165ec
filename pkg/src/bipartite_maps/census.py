"""Counting regular embeddings of K_{n,n}: closed forms, construction and reports.

Two independent counts of ``nu(n)`` live here: :func:`nu_formula` evaluates the
closed-form sums directly from the prime factorisation, while
:func:`nu_constructive` builds every triple and checks that no two are
isomorphic.  A third count, ``count_labellings_by_subgraph``, walks the same
loops as the labelling enumerator.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from itertools import combinations
from math import prod
from typing import Iterable, Optional, Sequence, TextIO

from .errors import ClassificationViolation, ContractError, ScaleError
from .groups import is_isobicyclic, triples_isomorphic
from .labelling import canonical_decomposition, enumerate_labellings, triple_from_labelling
from .map_ops import chirality_report
from .mapreal import realize_map, trace_faces
from .numbergraph import ShortSubgraph, pi_graph, short_spanning_subgraphs
from .numthy import euler_phi, exact_power, factorize, is_prime

DEFAULT_BUDGET = 60
TABLE1_SHA256 = "b5b5fc47dda2b84094c7072d733c9c6d31f28c2d4be284f84cf39463fd2cb204"
# An independent computer enumeration once reported 6 here.
TABLE1_NOTES = {90: "external enumeration reported 6; 7 cartesian products + 1 indecomposable give 8"}

CSV_COLUMNS = (
    "n",
    "labelling",
    "s",
    "t",
    "lambda",
    "face_length",
    "genus",
    "reflexible",
    "self_petrie",
    "mirror_partner",
    "petrie_partner",
)


@dataclass(frozen=True)
class NuBreakdown:
    """Per-subgraph summands of ``nu(n)``.

    For ``n = 1`` the single summand is keyed by ``None`` (the empty labelling).
    """

    n: int
    summands: dict[Optional[ShortSubgraph], int] = field(compare=False)
    total: int


def _vertex_weight(q: int, e: int, arcs: Sequence[tuple[int, int]], r: dict) -> int:
    """Choices of label for ``q`` together with nontrivial actions along its arcs."""

    def term(f: int) -> int:
        return euler_phi(q ** (e - f)) * prod(q ** min(f, r[a]) - 1 for a in arcs)

    if q == 2 and e >= 3:
        # f = 1 is impossible for 2-groups; four non-metacyclic labels replace it,
        # each acting by -1 only.
        return sum(term(f) for f in range(2, e + 1)) + 4
    return sum(term(f) for f in range(1, e + 1))


def nu_formula(n: int) -> NuBreakdown:
    """Closed-form count of regular embeddings of ``K_{n,n}``, split by subgraph."""
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    if n == 1:
        return NuBreakdown(1, {None: 1}, 1)
    fac = factorize(n).as_dict()
    g = pi_graph(n)
    r = g.arc_labels
    summands = {}
    for gamma in short_spanning_subgraphs(g):
        summands[gamma] = prod(
            _vertex_weight(q, fac[q], gamma.arcs_from(q), r) for q in gamma.nonterminal
        )
    return NuBreakdown(n, summands, sum(summands.values()))


def nu_two_prime(p1: int, d: int, p2: int, e: int) -> int:
    """``nu(p1^d p2^e)`` for primes ``p1 > p2`` with ``p1`` odd.

    Raises:
        ContractError: the primes are not a valid pair.
    """
    if not (is_prime(p1) and is_prime(p2) and p1 > p2 and p1 != 2) or d < 1 or e < 1:
        raise ContractError(f"invalid prime pair ({p1}^{d}, {p2}^{e})")
    r = exact_power(p2, p1 - 1)
    if p2 == 2 and e >= 3:
        return (2 ** (e - 2) + 4) * p1 ** (d - 1) + (2 * min(e, r) - 1) * 2 ** (e - 2) + 4
    return p1 ** (d - 1) * p2 ** (e - 1) + min(e, r) * (p2**e - p2 ** (e - 1))


def nu_constructive(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Build every triple for ``n`` and confirm they are pairwise non-isomorphic.

    Raises:
        ScaleError: ``n`` exceeds the construction budget.
        ClassificationViolation: a triple fails the axioms or two coincide.
    """
    if n > budget:
        raise ScaleError(f"n={n} exceeds the constructive budget {budget}")
    labellings = enumerate_labellings(n)
    triples = [triple_from_labelling(L) for L in labellings]
    for T in triples:
        if not is_isobicyclic(T.group, T.x, T.y, T.n):
            raise ClassificationViolation(f"{T.name} is not isobicyclic")
    for A, B in combinations(triples, 2):
        if triples_isomorphic(A, B):
            raise ClassificationViolation(f"{A.name} and {B.name} are isomorphic")
    return len(triples)


def load_table1() -> dict[int, int]:
    """Golden ``nu(n)`` values for ``1 <= n <= 120``, checksum-verified."""
    raw = resources.files(__package__).joinpath("data/table1.csv").read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != TABLE1_SHA256:
        raise ContractError(f"table1.csv checksum mismatch: {digest}")
    rows = csv.DictReader(io.StringIO(raw.decode("utf-8")))
    return {int(row["n"]): int(row["nu"]) for row in rows}


@dataclass(frozen=True)
class Table1Row:
    n: int
    expected: int
    computed: int
    note: str = ""

    @property
    def match(self) -> bool:
        return self.expected == self.computed


@dataclass(frozen=True)
class Table1Report:
    rows: tuple[Table1Row, ...]

    @property
    def matches(self) -> int:
        return sum(row.match for row in self.rows)

    @property
    def all_match(self) -> bool:
        return self.matches == len(self.rows)

    def format(self) -> str:
        lines = ["n,expected,computed,status,note"]
        for row in self.rows:
            status = "ok" if row.match else "MISMATCH"
            lines.append(f"{row.n},{row.expected},{row.computed},{status},{row.note}")
        lines.append(f"# {self.matches}/{len(self.rows)} match")
        return "\n".join(lines) + "\n"


def table1_check(ns: Iterable[int] = range(1, 121)) -> Table1Report:
    golden = load_table1()
    rows = []
    for n in ns:
        if n not in golden:
            raise ContractError(f"n={n} is outside the golden table")
        rows.append(Table1Row(n, golden[n], nu_formula(n).total, TABLE1_NOTES.get(n, "")))
    return Table1Report(tuple(rows))


@dataclass(frozen=True)
class CensusRecord:
    n: int
    labelling: str
    s: int
    t: int
    lam: int
    face_length: int
    genus: int
    reflexible: bool
    self_petrie: bool
    mirror_partner: str
    petrie_partner: Optional[str]

    def as_row(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return {k: d[k] for k in CSV_COLUMNS}


def census_report(n: int, budget: int = DEFAULT_BUDGET) -> list[CensusRecord]:
    """One record per labelling of ``n``, in enumeration order."""
    if n > budget:
        raise ScaleError(f"n={n} exceeds the constructive budget {budget}")
    out = []
    for L in enumerate_labellings(n):
        T = triple_from_labelling(L)
        dec = canonical_decomposition(L)
        inv = trace_faces(realize_map(T))
        chir = chirality_report(T)
        out.append(
            CensusRecord(
                n=n,
                labelling=L.descriptor,
                s=dec.s,
                t=dec.t,
                lam=dec.lam.value if dec.t > 1 else 1,
                face_length=inv.face_length,
                genus=inv.genus,
                reflexible=chir.reflexible,
                self_petrie=chir.self_petrie,
                mirror_partner=chir.mirror_partner,
                petrie_partner=chir.petrie_partner,
            )
        )
    return out


def census_range(ns: Iterable[int], jobs: int = 1, budget: int = DEFAULT_BUDGET) -> list[CensusRecord]:
    """Census over several ``n``; output order is by ``n`` whatever ``jobs`` is."""
    ns = sorted(set(ns))
    for n in ns:
        if n > budget:
            raise ScaleError(f"n={n} exceeds the constructive budget {budget}")
    if jobs <= 1:
        chunks = [census_report(n, budget) for n in ns]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(census_report, ns, [budget] * len(ns)))
    return [rec for chunk in chunks for rec in chunk]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_csv(records: Sequence[CensusRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        row = rec.as_row()
        writer.writerow([_cell(row[c]) for c in CSV_COLUMNS])


def write_json(records: Sequence[CensusRecord], stream: TextIO) -> None:
    json.dump([rec.as_row() for rec in records], stream, indent=1)
    stream.write("\n")
