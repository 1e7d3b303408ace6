#!/usr/bin/env python3
"""
Skew Root Systems
Axiom validation, root graphs, decomposition, reduction and enumeration for Lie and Jordan type systems
"""

import logging
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from abgroup import (
    DEFAULT_ENUMERATION_BUDGET, BudgetExceeded, FinAbGroup, GroupElem, GroupHom, MismatchedGroups,
    canonical_orders, elem_add, elem_order, generates, parse_element, quotient, subgroup_generated
)
from symplectic import Bicharacter, embed_summand, is_nonsingular, orthogonal_sum, radical

# Constants
DEFAULT_SEARCH_BUDGET = 2_000_000
POWERSET_GROUP_LIMIT = 16
SPLIT_PAIR_LIMIT = 12

logger = logging.getLogger("skewroot")


class SkewRootError(Exception):
    """Base error for skew root system operations"""


class NotValidated(SkewRootError):
    """Raised when an operation needs a system that satisfies its axioms"""


class KindMismatch(SkewRootError, ValueError):
    """Raised when Lie and Jordan data are mixed"""


class NotInRadical(SkewRootError, ValueError):
    """Raised when reducing by a subgroup that is not inside the radical"""


class RootKind(Enum):
    LIE = "lie"
    JORDAN = "jordan"

    @classmethod
    def parse(cls, text: str) -> 'RootKind':
        try:
            return cls(str(text).strip().lower())
        except ValueError as e:
            raise KindMismatch(f"Unknown root system kind: {text!r} (expected 'lie' or 'jordan')") from e

    @property
    def axiom_prefix(self) -> str:
        return "SRSL" if self is RootKind.LIE else "SRSJ"

    @property
    def epsilon_label(self) -> str:
        return "1" if self is RootKind.LIE else "-1"

    def epsilon_exponent(self, N: int) -> Optional[int]:
        """Exponent of epsilon in mu_N, or None when -1 is not an N-th root of unity"""
        if self is RootKind.LIE:
            return 0
        return N // 2 if N % 2 == 0 else None


def is_edge(beta: Bicharacter, kind: RootKind, a: GroupElem, b: GroupElem) -> bool:
    """beta(a, b) != epsilon"""
    return beta.exponent(a, b) != kind.epsilon_exponent(beta.N)


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str
    witness: Tuple[GroupElem, ...] = ()
    count: int = 1

    def __str__(self) -> str:
        text = f"{self.axiom}: {self.message}"
        if self.witness:
            text += " (witness " + " ".join(str(w) for w in self.witness) + ")"
        if self.count > 1:
            text += f" [{self.count} cases]"
        return text


@dataclass
class ValidationReport:
    kind: RootKind
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms_violated(self) -> List[str]:
        return [v.axiom for v in self.violations]

    def format(self) -> str:
        if self.ok:
            return f"valid {self.kind.value} skew root system"
        lines = [f"invalid {self.kind.value} skew root system: {len(self.violations)} axiom violation(s)"]
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)


def validate(kind: RootKind, beta: Bicharacter, roots: Iterable[GroupElem],
             budget: int = DEFAULT_ENUMERATION_BUDGET,
             rad: Optional[FrozenSet[GroupElem]] = None) -> ValidationReport:
    """Check the three axioms of the given kind; violations come back as data"""
    roots = frozenset(roots)
    group = beta.group
    for a in roots:
        if a.group != group:
            raise MismatchedGroups(f"Root {a} does not belong to {group}")
    prefix = kind.axiom_prefix
    ordered = sorted(roots)
    violations: List[Violation] = []

    if not roots:
        violations.append(Violation(f"{prefix}0", "root set is empty"))
    if kind is RootKind.LIE:
        rad = rad if rad is not None else radical(beta, budget)
        in_radical = [a for a in ordered if a in rad]
        if in_radical:
            violations.append(Violation("SRSL0", "root lies in the radical of beta",
                                        (in_radical[0],), len(in_radical)))
    span = subgroup_generated(group, ordered, budget)
    if roots and len(span) != group.size:
        violations.append(Violation(f"{prefix}0",
                                    f"roots generate a subgroup of order {len(span)}, not all of {group}"))

    not_symmetric = [a for a in ordered if -a not in roots]
    if not_symmetric:
        violations.append(Violation(f"{prefix}1", "root set is not closed under negation",
                                    (not_symmetric[0],), len(not_symmetric)))

    eps = kind.epsilon_exponent(beta.N)
    witness = None
    count = 0
    for a in ordered:
        for b in ordered:
            if beta.exponent(a, b) != eps and elem_add(a, b) not in roots:
                count += 1
                if witness is None:
                    witness = (a, b)
    if count:
        violations.append(Violation(f"{prefix}2", f"beta(a,b) != {kind.epsilon_label} but a+b is not a root",
                                    witness, count))

    report = ValidationReport(kind, violations)
    logger.debug(f"Validated {kind.value} root set of size {len(roots)}: {len(violations)} violation(s)")
    return report


@dataclass(frozen=True)
class SkewRootSystem:
    beta: Bicharacter
    kind: RootKind
    roots: FrozenSet[GroupElem]

    def __post_init__(self):
        roots = frozenset(self.roots)
        for a in roots:
            if a.group != self.beta.group:
                raise MismatchedGroups(f"Root {a} does not belong to {self.beta.group}")
        object.__setattr__(self, 'roots', roots)

    @property
    def group(self) -> FinAbGroup:
        return self.beta.group

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self.kind, self.beta, self.roots)

    @property
    def validated(self) -> bool:
        return self.report.ok

    def require_validated(self):
        if not self.validated:
            raise NotValidated(f"{self.describe()} violates {', '.join(self.report.axioms_violated())}")

    @cached_property
    def reduced(self) -> bool:
        return is_nonsingular(self.beta)

    @cached_property
    def sorted_roots(self) -> Tuple[GroupElem, ...]:
        return tuple(sorted(self.roots))

    def __len__(self) -> int:
        return len(self.roots)

    def describe(self) -> str:
        return f"{self.kind.value} system over {self.group} (N={self.beta.N}), |R| = {len(self.roots)}"


@dataclass(frozen=True)
class RootGraph:
    kind: RootKind
    vertices: Tuple[GroupElem, ...]
    edges: FrozenSet[Tuple[GroupElem, GroupElem]]

    @cached_property
    def adjacency(self) -> Dict[GroupElem, Tuple[GroupElem, ...]]:
        neighbors: Dict[GroupElem, List[GroupElem]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            neighbors[a].append(b)
            neighbors[b].append(a)
        return {v: tuple(sorted(ns)) for v, ns in neighbors.items()}

    def degree_multiset(self) -> Tuple[int, ...]:
        return tuple(sorted(len(ns) for ns in self.adjacency.values()))

    def components(self) -> List[FrozenSet[GroupElem]]:
        seen: Set[GroupElem] = set()
        parts = []
        for start in self.vertices:
            if start in seen:
                continue
            seen.add(start)
            part = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        part.add(w)
                        queue.append(w)
            parts.append(frozenset(part))
        return parts

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def build_graph(system: SkewRootSystem) -> RootGraph:
    system.require_validated()
    vertices = system.sorted_roots
    edges = frozenset((a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:]
                      if is_edge(system.beta, system.kind, a, b))
    return RootGraph(system.kind, vertices, edges)


def components(system: SkewRootSystem) -> List[FrozenSet[GroupElem]]:
    return build_graph(system).components()


def is_indecomposable(system: SkewRootSystem) -> bool:
    """Graph connectivity; Jordan systems are indecomposable by convention"""
    if system.kind is RootKind.JORDAN:
        system.require_validated()
        return True
    return len(components(system)) == 1


@dataclass
class Decomposition:
    components: List[FrozenSet[GroupElem]]
    indecomposable: bool
    # graph connectivity only characterizes indecomposability for reduced systems
    caveat: bool


def decompose(system: SkewRootSystem) -> Decomposition:
    parts = components(system)
    indecomposable = True if system.kind is RootKind.JORDAN else len(parts) == 1
    caveat = system.kind is RootKind.LIE and not system.reduced
    return Decomposition(parts, indecomposable, caveat)


def _negation_orbits(roots: Iterable[GroupElem]) -> List[FrozenSet[GroupElem]]:
    orbits = []
    seen = set()
    for a in sorted(roots):
        if a not in seen:
            orbit = frozenset({a, -a})
            seen |= orbit
            orbits.append(orbit)
    return orbits


def orthogonal_splitting(system: SkewRootSystem,
                         max_pairs: int = SPLIT_PAIR_LIMIT) -> Optional[Tuple[FrozenSet[GroupElem], FrozenSet[GroupElem]]]:
    """
    Search for R = R1 u R2 with R1, R2 orthogonal and generating complementary subgroups.

    Works without the root graph, by trying every split of the negation
    orbits. Returns None when R does not decompose.
    """
    if system.kind is not RootKind.LIE:
        raise KindMismatch("Orthogonal splittings are defined for Lie type systems only")
    system.require_validated()
    orbits = _negation_orbits(system.roots)
    if len(orbits) > max_pairs:
        raise BudgetExceeded(f"{len(orbits)} root pairs exceed the splitting limit {max_pairs}")
    group = system.group
    beta = system.beta
    # the last orbit always goes to the second part
    for mask in range(1, 2 ** (len(orbits) - 1)):
        first = frozenset().union(*(o for i, o in enumerate(orbits) if mask >> i & 1))
        second = system.roots - first
        if any(beta.exponent(a, b) for a in first for b in second):
            continue
        span1 = subgroup_generated(group, first)
        span2 = subgroup_generated(group, second)
        if len(span1 & span2) != 1 or len(span1) * len(span2) != group.size:
            continue
        if all(any(beta.exponent(a, b) for b in part) for part in (first, second) for a in part):
            return first, second
    return None


def direct_sum(first: SkewRootSystem, second: SkewRootSystem) -> SkewRootSystem:
    if first.kind is not RootKind.LIE or second.kind is not RootKind.LIE:
        raise KindMismatch("Direct sums are defined for Lie type systems only")
    first.require_validated()
    second.require_validated()
    beta = orthogonal_sum(first.beta, second.beta)
    total = beta.group
    roots = ({embed_summand(a, total, True) for a in first.roots}
             | {embed_summand(b, total, False) for b in second.roots})
    return SkewRootSystem(beta, RootKind.LIE, frozenset(roots))


def reduce(system: SkewRootSystem, subgroup: Iterable[GroupElem],
           budget: int = DEFAULT_ENUMERATION_BUDGET) -> Tuple[SkewRootSystem, GroupHom]:
    """Image of the system in G/H for H inside the radical of beta"""
    H = frozenset(subgroup)
    rad = radical(system.beta, budget)
    outside = sorted(h for h in H if h not in rad)
    if outside:
        raise NotInRadical(f"{outside[0]} is not in the radical of beta")
    group = system.group
    target, projection = quotient(group, H, budget)
    if len(H) <= 1:
        return system, projection

    section: Dict[GroupElem, GroupElem] = {}
    wanted = set(target.generators())
    for g in group.elements(budget):
        image = projection.apply(g)
        if image in wanted and image not in section:
            section[image] = g
            if len(section) == len(wanted):
                break
    lifts = [section[t] for t in target.generators()]
    expo = tuple(tuple(system.beta.exponent(x, y) for y in lifts) for x in lifts)
    beta_bar = Bicharacter(target, system.beta.N, expo)
    reduced = SkewRootSystem(beta_bar, system.kind, projection.image_of(system.roots))
    logger.info(f"Reduced {system.describe()} by a subgroup of order {len(H)} to {reduced.describe()}")
    return reduced, projection


# Isomorphisms

def _same_root(e1: int, n1: int, e2: int, n2: int) -> bool:
    common = n1 * n2
    return (e1 * n2) % common == (e2 * n1) % common


def beta_isomorphisms(beta1: Bicharacter, beta2: Bicharacter,
                      budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[GroupHom]:
    """Group isomorphisms G1 -> G2 carrying beta1 to beta2, by backtracking over generator images"""
    G1, G2 = beta1.group, beta2.group
    if G1.size != G2.size or canonical_orders(G1) != canonical_orders(G2):
        return
    by_order: Dict[int, List[GroupElem]] = {}
    for g in G2.elements():
        by_order.setdefault(elem_order(g), []).append(g)
    gens = G1.generators()
    values = [[beta1.exponent(a, b) for b in gens] for a in gens]
    chosen: List[GroupElem] = []
    spans: List[FrozenSet[GroupElem]] = [frozenset({G2.zero})]
    nodes = 0

    def search(i: int) -> Iterator[GroupHom]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"Isomorphism search exceeded {budget} nodes")
        if i == G1.rank:
            if len(spans[-1]) == G2.size:
                yield GroupHom(G1, G2, tuple(c.residues for c in chosen))
            return
        expected = len(spans[-1]) * G1.orders[i]
        for cand in by_order.get(G1.orders[i], []):
            if not all(_same_root(values[j][i], beta1.N, beta2.exponent(chosen[j], cand), beta2.N)
                       for j in range(i)):
                continue
            span = subgroup_generated(G2, chosen + [cand])
            if len(span) != expected:
                continue
            chosen.append(cand)
            spans.append(span)
            yield from search(i + 1)
            spans.pop()
            chosen.pop()

    yield from search(0)


def automorphisms(beta: Bicharacter, budget: int = DEFAULT_SEARCH_BUDGET) -> List[GroupHom]:
    return list(beta_isomorphisms(beta, beta, budget))


def are_isomorphic(first: SkewRootSystem, second: SkewRootSystem,
                   budget: int = DEFAULT_SEARCH_BUDGET) -> Optional[GroupHom]:
    """A beta-preserving isomorphism mapping R1 onto R2, or None"""
    if first.kind is not second.kind or len(first.roots) != len(second.roots):
        return None
    for phi in beta_isomorphisms(first.beta, second.beta, budget):
        if phi.image_of(first.roots) == second.roots:
            return phi
    return None


@dataclass(frozen=True)
class ClassInvariants:
    kind: RootKind
    group_size: int
    root_count: int
    reduced: bool
    component_count: int
    degrees: Tuple[int, ...]


def class_invariants(system: SkewRootSystem) -> ClassInvariants:
    graph = build_graph(system)
    return ClassInvariants(system.kind, system.group.size, len(system.roots), system.reduced,
                           len(graph.components()), graph.degree_multiset())


@dataclass
class SystemClass:
    class_id: int
    representative: SkewRootSystem
    members: List[SkewRootSystem]
    invariants: ClassInvariants


def _system_key(system: SkewRootSystem) -> Tuple:
    return (system.kind.value, len(system.roots), tuple(a.residues for a in system.sorted_roots))


def classify(systems: Iterable[SkewRootSystem], budget: int = DEFAULT_SEARCH_BUDGET) -> List[SystemClass]:
    """Group systems into isomorphism classes, numbered in order of their smallest member"""
    ordered = sorted(systems, key=_system_key)
    classes: List[SystemClass] = []
    if not ordered:
        return classes

    shared = all(s.beta == ordered[0].beta and s.kind is ordered[0].kind for s in ordered)
    if shared:
        autos = automorphisms(ordered[0].beta, budget)
        by_key: Dict[Tuple, SystemClass] = {}
        for system in ordered:
            key = min(tuple(sorted(phi.apply(a).residues for a in system.roots)) for phi in autos)
            if key in by_key:
                by_key[key].members.append(system)
            else:
                cls = SystemClass(len(classes) + 1, system, [system], class_invariants(system))
                by_key[key] = cls
                classes.append(cls)
    else:
        for system in ordered:
            invariants = class_invariants(system)
            for cls in classes:
                if cls.invariants == invariants and are_isomorphic(cls.representative, system, budget):
                    cls.members.append(system)
                    break
            else:
                classes.append(SystemClass(len(classes) + 1, system, [system], invariants))
    logger.info(f"Classified {len(ordered)} system(s) into {len(classes)} class(es)")
    return classes


# Enumeration

class _SearchCounter:
    """Node budget shared by concurrent subtrees"""

    def __init__(self, budget: int):
        self.budget = budget
        self.count = 0
        self._lock = threading.Lock()

    def tick(self):
        with self._lock:
            self.count += 1
            if self.count > self.budget:
                raise BudgetExceeded(f"Enumeration exceeded its budget of {self.budget} search nodes")


class _SearchSpace:
    """Index tables for the closure-forcing search over negation orbits"""

    def __init__(self, kind: RootKind, beta: Bicharacter, budget: int):
        self.kind = kind
        self.beta = beta
        self.elements = list(beta.group.elements(budget))
        index = {g: i for i, g in enumerate(self.elements)}
        size = len(self.elements)
        self.add = [[index[elem_add(a, b)] for b in self.elements] for a in self.elements]
        self.neg = [index[-a] for a in self.elements]
        self.forcing = [[is_edge(beta, kind, a, b) for b in self.elements] for a in self.elements]
        if kind is RootKind.LIE:
            rad = radical(beta, budget)
            self.allowed = [g not in rad for g in self.elements]
        else:
            self.allowed = [True] * size
        self.orbits: List[Tuple[int, ...]] = []
        self.orbit_of = [-1] * size
        for i in range(size):
            if self.allowed[i] and self.orbit_of[i] < 0:
                orbit = tuple(sorted({i, self.neg[i]}))
                for j in orbit:
                    self.orbit_of[j] = len(self.orbits)
                self.orbits.append(orbit)

    def include(self, included: Set[int], decided: List[Optional[bool]], orbit: int) -> bool:
        """Add an orbit and everything it forces; False on a contradiction"""
        stack = [orbit]
        while stack:
            o = stack.pop()
            if decided[o] is True:
                continue
            if decided[o] is False:
                return False
            decided[o] = True
            fresh = [x for x in self.orbits[o] if x not in included]
            included.update(fresh)
            for x in fresh:
                for y in list(included):
                    if not self.forcing[x][y]:
                        continue
                    s = self.add[x][y]
                    if s in included:
                        continue
                    if not self.allowed[s] or decided[self.orbit_of[s]] is False:
                        return False
                    stack.append(self.orbit_of[s])
        return True

    def initial_state(self) -> Optional[Tuple[Set[int], List[Optional[bool]]]]:
        included: Set[int] = set()
        decided: List[Optional[bool]] = [None] * len(self.orbits)
        if self.kind is RootKind.JORDAN:
            zero = self.elements.index(self.beta.group.zero)
            if not self.include(included, decided, self.orbit_of[zero]):
                return None
        return included, decided

    def children(self, included: Set[int], decided: List[Optional[bool]]):
        nxt = decided.index(None)
        inc, dec = set(included), list(decided)
        if self.include(inc, dec, nxt):
            yield inc, dec
        dec = list(decided)
        dec[nxt] = False
        yield set(included), dec

    def accept(self, included: Set[int]) -> Optional[FrozenSet[GroupElem]]:
        roots = frozenset(self.elements[i] for i in included)
        if roots and generates(self.beta.group, roots):
            return roots
        return None

    def run(self, included: Set[int], decided: List[Optional[bool]], counter: _SearchCounter,
            results: List[FrozenSet[GroupElem]]):
        counter.tick()
        if None not in decided:
            roots = self.accept(included)
            if roots is not None:
                results.append(roots)
            return
        for inc, dec in self.children(included, decided):
            self.run(inc, dec, counter, results)


def _enumerate_closure(kind: RootKind, beta: Bicharacter, budget: int, jobs: int) -> List[FrozenSet[GroupElem]]:
    space = _SearchSpace(kind, beta, budget)
    counter = _SearchCounter(budget)
    start = space.initial_state()
    if start is None:
        return []
    results: List[FrozenSet[GroupElem]] = []
    if jobs <= 1:
        space.run(*start, counter, results)
        return results

    # split the tree near the root and search the subtrees concurrently
    frontier = [start]
    while frontier and len(frontier) < 4 * jobs:
        expanded = []
        for included, decided in frontier:
            counter.tick()
            if None not in decided:
                roots = space.accept(included)
                if roots is not None:
                    results.append(roots)
                continue
            expanded.extend(space.children(included, decided))
        if not expanded:
            frontier = []
            break
        frontier = expanded

    def run_subtree(state) -> List[FrozenSet[GroupElem]]:
        found: List[FrozenSet[GroupElem]] = []
        space.run(state[0], state[1], counter, found)
        return found

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for found in pool.map(run_subtree, frontier):
            results.extend(found)
    return results


def _enumerate_powerset(kind: RootKind, beta: Bicharacter, budget: int) -> List[FrozenSet[GroupElem]]:
    group = beta.group
    if group.size > POWERSET_GROUP_LIMIT or 2 ** group.size > budget:
        raise BudgetExceeded(f"Power set of a group of order {group.size} exceeds the budget")
    elements = list(group.elements())
    rad = radical(beta) if kind is RootKind.LIE else None
    results = []
    for mask in range(2 ** len(elements)):
        roots = frozenset(e for i, e in enumerate(elements) if mask >> i & 1)
        if validate(kind, beta, roots, rad=rad).ok:
            results.append(roots)
    return results


def enumerate_systems(beta: Bicharacter, kind: RootKind, budget: int = DEFAULT_SEARCH_BUDGET,
                      jobs: int = 1, method: str = "closure") -> List[SkewRootSystem]:
    """
    Every root set R making (G, beta, R) a skew root system of the given kind.

    The closure method decides negation orbits one at a time and adds every
    root the closure axiom forces; "powerset" checks all subsets and is kept
    for cross-checking on groups of order at most 16.
    """
    if method == "closure":
        found = _enumerate_closure(kind, beta, budget, jobs)
    elif method == "powerset":
        found = _enumerate_powerset(kind, beta, budget)
    else:
        raise ValueError(f"Unknown enumeration method: {method}")
    systems = sorted((SkewRootSystem(beta, kind, roots) for roots in set(found)), key=_system_key)
    logger.info(f"Enumerated {len(systems)} {kind.value} system(s) over {beta.group} using {method}")
    return systems


def format_census(kind: RootKind, beta: Bicharacter, classes: List[SystemClass],
                  annotate: Optional[Callable[[SkewRootSystem], str]] = None) -> str:
    total = sum(len(c.members) for c in classes)
    lines = [f"# census kind={kind.value} group={beta.group} N={beta.N} systems={total} classes={len(classes)}"]
    for cls in classes:
        inv = cls.invariants
        line = (f"class {cls.class_id}: size={inv.root_count} members={len(cls.members)} "
                f"reduced={'yes' if inv.reduced else 'no'} components={inv.component_count} "
                f"degrees={','.join(str(d) for d in inv.degrees)}")
        if annotate is not None:
            line += f" algebra={annotate(cls.representative)}"
        lines.append(line)
        lines.append("  roots: " + " ".join(str(a) for a in cls.representative.sorted_roots))
    return "\n".join(lines) + "\n"


def format_root_system(system: SkewRootSystem) -> str:
    lines = [system.kind.value] + [str(a) for a in system.sorted_roots]
    return "\n".join(lines) + "\n"


def parse_root_system(beta: Bicharacter, text: str) -> SkewRootSystem:
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith("#")]
    if not lines:
        raise SkewRootError("Root system text is empty")
    kind = RootKind.parse(lines[0])
    roots = frozenset(parse_element(beta.group, line) for line in lines[1:])
    return SkewRootSystem(beta, kind, roots)
