"""Constructive realization engine.

Given a sign pattern that is AP-irreducible and has no ``+`` entry between
distinct irreducible components of its ``+`` part, build a certified
algebraically positive matrix in its qualitative class.

Outline of :func:`realize`:

1. extract a minimally AP-irreducible subpattern ``X`` with the same ``+``
   components;
2. split every ``+`` diagonal index of ``X`` into a coupled pair, giving a
   zero-diagonal pattern ``Y``;
3. grow a certified matrix for ``Y`` (:func:`realize_zero_diagonal`): one
   virtual vertex per component, wired along an ear sequence of the
   component quotient digraph, then each virtual vertex is blown up into its
   component with the block constructions;
4. contract each split pair back to a single index;
5. perturb the remaining zero entries of ``A`` into place.

Every intermediate triple is certified immediately; a failed check raises
``EngineInvariantBroken``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constructions import (Chord, Cycle, EarChord, EigenTriple, Plain,
                            SplitEntry, SplitTerminal, attach_cycle_negative,
                            attach_cycle_positive, contract_pair,
                            expand_component, resolve_expand_variant,
                            resolve_split_variant, split_leading_diagonal)
from .errors import (EngineInvariantBroken, HypothesisFails, NegativeDiagonal,
                     NumericalFailure, PreconditionViolated, SignApError,
                     VerdictError)
from .pattern import (SignPattern, matrix_to_doc, positive_part, sign_of)
from .spectral import (WitnessPolynomial, perturb_to_superpattern,
                       realize_base_cycle, verify_algebraic_positivity)
from .structure import (Digraph, NestedSequence, ap_irreducibility_failure,
                        color_arcs, component_index, digraph_of,
                        irreducible_components, is_ap_irreducible,
                        is_directed_cycle, is_minimally_strongly_connected,
                        iter_nested_sequences, minimal_ap_subpattern,
                        nested_sequence, quotient_digraph, red_arc_table)

CERTIFY_RTOL = 1e-9


# -- hypothesis ----------------------------------------------------------------

def cross_component_plus(A: SignPattern) -> list[tuple[int, int]]:
    """``+`` entries whose endpoints lie in different components of the ``+`` part."""
    where = component_index(irreducible_components(positive_part(A)))
    return [(i, j) for i, j in A.nonzeros() if A.entries[i, j] > 0 and where[i] != where[j]]


def sufficient_condition_holds(A: SignPattern) -> bool:
    """AP-irreducible, and no ``+`` joins two distinct components of the ``+`` part."""
    return is_ap_irreducible(A) and not cross_component_plus(A)


def sufficient_condition_failure(A: SignPattern) -> str | None:
    reason = ap_irreducibility_failure(A)
    if reason is not None:
        return f"not AP-irreducible: {reason}"
    cross = cross_component_plus(A)
    if cross:
        i, j = cross[0]
        return f"entry ({i + 1}, {j + 1}) is + but joins two components of the + part"
    return None


# -- vertex splitting ----------------------------------------------------------

@dataclass(frozen=True)
class SplitMap:
    """Index bookkeeping between ``X`` and its split, zero-diagonal version ``Y``.

    ``pairs`` holds ``(x, y_first, y_second)`` for each split index; a split
    index is replaced in place by its two halves, so ``Y`` keeps ``X``'s order.
    """
    x_order: int
    pairs: tuple[tuple[int, int, int], ...]
    y_to_x: tuple[int, ...]

    @property
    def y_order(self) -> int:
        return len(self.y_to_x)

    def is_identity(self) -> bool:
        return not self.pairs

    def names(self) -> list[str]:
        first = {a: x for x, a, _ in self.pairs}
        second = {b: x for x, _, b in self.pairs}
        out = []
        for y, x in enumerate(self.y_to_x):
            suffix = "'" if y in first else "''" if y in second else ""
            out.append(f"{x + 1}{suffix}")
        return out

    def to_doc(self) -> dict:
        return {"x_order": self.x_order,
                "pairs": [{"index": x, "first": a, "second": b} for x, a, b in self.pairs]}


def split_positive_diagonals(X: SignPattern) -> tuple[SignPattern, SplitMap]:
    """Replace each ``+`` diagonal index by a ``+``-coupled pair of indices.

    The first half keeps the original column and has a single ``+`` toward
    the second half; the second half keeps the original row and has a
    single ``+`` back.
    """
    x = X.entries
    if np.any(np.diag(x) < 0):
        raise NegativeDiagonal("a minimally AP-irreducible pattern never has a - diagonal entry")
    y_to_x, role, pairs = [], [], []
    for i in range(X.n):
        if x[i, i] > 0:
            pairs.append((i, len(y_to_x), len(y_to_x) + 1))
            y_to_x += [i, i]
            role += ["first", "second"]
        else:
            y_to_x.append(i)
            role.append("")
    m = len(y_to_x)
    Y = np.zeros((m, m), dtype=np.int8)
    for a in range(m):
        for b in range(m):
            if role[a] == "first" or role[b] == "second":
                continue
            xa, xb = y_to_x[a], y_to_x[b]
            if xa != xb:
                Y[a, b] = x[xa, xb]
    for _, a, b in pairs:
        Y[a, b] = Y[b, a] = 1
    return SignPattern(Y), SplitMap(X.n, tuple(pairs), tuple(y_to_x))


# -- trace ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TraceStep:
    rule: str
    params: dict
    epsilon: float | None
    labels: tuple[str, ...]
    pattern: SignPattern
    residuals: tuple[float, float]
    milestone: bool = False
    phase: str = "zero_diagonal"

    def to_doc(self) -> dict:
        return {"rule": self.rule, "params": self.params, "epsilon": self.epsilon,
                "labels": list(self.labels), "pattern": self.pattern.to_rows(),
                "residuals": list(self.residuals), "milestone": self.milestone,
                "phase": self.phase}

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        eps = "" if self.epsilon is None else f"  epsilon={self.epsilon:.6g}"
        mark = "*" if self.milestone else " "
        head = f"{mark} [{self.phase}] {self.rule}({params}){eps}"
        width = max(len(s) for s in self.labels)
        lines = [head, "    " + " ".join(s.rjust(width) for s in self.labels)]
        for name, row in zip(self.labels, self.pattern.to_rows()):
            cells = " ".join(tok.rjust(width) for tok in row.split())
            lines.append(f"{name.rjust(width)}  {cells}")
        return "\n".join(lines)


@dataclass
class ConstructionTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def append(self, step: TraceStep) -> None:
        self.steps.append(step)

    def extend(self, other: "ConstructionTrace") -> None:
        self.steps.extend(other.steps)

    def milestones(self) -> list[TraceStep]:
        return [s for s in self.steps if s.milestone]

    def __len__(self) -> int:
        return len(self.steps)

    def to_doc(self) -> list[dict]:
        return [s.to_doc() for s in self.steps]

    def to_text(self) -> str:
        return "\n\n".join(f"step {i + 1}\n{s.to_text()}" for i, s in enumerate(self.steps)) + "\n"


@dataclass(frozen=True, eq=False)
class Realization:
    pattern: SignPattern
    matrix: np.ndarray
    lam: float
    u: np.ndarray
    v: np.ndarray
    witness: WitnessPolynomial
    trace: ConstructionTrace
    subpattern: SignPattern

    def triple(self) -> EigenTriple:
        return EigenTriple(self.matrix, self.lam, self.u, self.v)

    def to_doc(self) -> dict:
        return {"pattern": self.pattern.to_rows(),
                "subpattern": self.subpattern.to_rows(),
                "matrix": matrix_to_doc(self.matrix),
                "lambda": self.lam,
                "u": [float(x) for x in self.u],
                "v": [float(x) for x in self.v],
                "witness": self.witness.to_doc(),
                "trace": self.trace.to_doc()}


# -- the zero-diagonal engine --------------------------------------------------

@dataclass(frozen=True, order=True)
class _Virtual:
    component: int


def _sort_key(label) -> tuple[int, int]:
    return (1, label.component) if isinstance(label, _Virtual) else (0, label)


class _Engine:
    def __init__(self, Y: SignPattern, names: list[str], trace: ConstructionTrace):
        self.Y = Y
        self.names = names
        self.trace = trace
        self.parts = irreducible_components(positive_part(Y))
        self.where = component_index(self.parts)
        coloring = color_arcs(Y, self.parts)
        self.quotient = quotient_digraph(coloring, self.parts)
        self.red = red_arc_table(coloring, self.parts)
        self.graph = digraph_of(Y)
        self.T: EigenTriple | None = None
        self.labels: list = []
        self.transposed = False
        self._check_preconditions()

    # -- preconditions -----------------------------------------------------
    def _check_preconditions(self) -> None:
        Y = self.Y
        if np.any(np.diag(Y.entries) != 0):
            raise PreconditionViolated("pattern must have an all-zero diagonal")
        if cross_component_plus(Y):
            raise PreconditionViolated("a + entry joins two components of the + part")
        for i, j in Y.nonzeros():
            if self.where[i] == self.where[j] and Y.entries[i, j] < 0:
                raise PreconditionViolated(f"- entry ({i + 1}, {j + 1}) lies inside a component")
        for part in self.parts:
            sub = self.graph.induced(part)
            if len(part) < 2 or not is_minimally_strongly_connected(sub):
                raise PreconditionViolated(
                    f"component {[self.names[x] for x in part]} is not minimally strongly connected")
        if len(self.parts) > 1 and not is_minimally_strongly_connected(self.quotient):
            raise PreconditionViolated("component quotient digraph is not minimally strongly connected")
        for pair, arcs in self.red.items():
            if len(arcs) != 1:
                raise PreconditionViolated(f"components {pair} are joined by {len(arcs)} arcs")

    # -- bookkeeping -------------------------------------------------------
    def _name(self, label) -> str:
        if isinstance(label, _Virtual):
            return f"v{label.component + 1}"
        return self.names[label]

    def _install(self, T: EigenTriple, labels: list, what: str) -> None:
        problems = T.problems(CERTIFY_RTOL)
        if problems:
            raise EngineInvariantBroken(f"after {what}: " + "; ".join(problems))
        order = sorted(range(len(labels)), key=lambda i: _sort_key(labels[i]))
        self.T = T.permuted(order)
        self.labels = [labels[i] for i in order]

    def _record(self, rule: str, params: dict, epsilon=None, milestone=False) -> None:
        M = self.T.M.T if self.transposed else self.T.M
        self.trace.append(TraceStep(
            rule=rule, params=params, epsilon=epsilon,
            labels=tuple(self._name(x) for x in self.labels),
            pattern=sign_of(M), residuals=self.T.residuals(),
            milestone=milestone, phase="zero_diagonal"))

    def _front(self, first: list) -> tuple[EigenTriple, list]:
        pos = {x: i for i, x in enumerate(self.labels)}
        lead = [pos[x] for x in first]
        rest = [i for i in range(len(self.labels)) if i not in set(lead)]
        order = lead + rest
        return self.T.permuted(order), [self.labels[i] for i in order]

    def _entry(self, a, b) -> float:
        return float(self.T.M[self.labels.index(a), self.labels.index(b)])

    def _perturb(self, a, b, sign: int, milestone: bool) -> None:
        i, j = self.labels.index(a), self.labels.index(b)
        target = sign_of(self.T.M).entries.copy()
        if target[i, j] != 0:
            raise EngineInvariantBroken(f"entry ({self._name(a)}, {self._name(b)}) is already nonzero")
        target[i, j] = sign
        try:
            T = perturb_to_superpattern(self.T, SignPattern(target))
        except SignApError as exc:
            raise EngineInvariantBroken(f"perturbation at ({self._name(a)}, {self._name(b)}) failed: {exc}") from exc
        T = EigenTriple(T.M / T.lam, 1.0, T.u / np.max(T.u), T.v / np.max(T.v))
        self._install(T, list(self.labels), "perturbation")
        a_name, b_name = self._name(a), self._name(b)
        if self.transposed:
            a_name, b_name = b_name, a_name
        self._record("perturb", {"entry": [a_name, b_name], "sign": "+" if sign > 0 else "-"},
                     milestone=milestone)

    def _component_of(self, label) -> int:
        return label.component if isinstance(label, _Virtual) else self.where[label]

    def _off_diagonal(self, label, axis: int) -> list:
        i = self.labels.index(label)
        line = self.T.M[:, i] if axis == 0 else self.T.M[i, :]
        return [self.labels[r] for r in np.nonzero(line)[0] if r != i]

    # -- driver --------------------------------------------------------------
    def run(self) -> EigenTriple:
        m = len(self.parts)
        if m == 1:
            T = EigenTriple(np.ones((1, 1)), 1.0, np.ones(1), np.ones(1))
            self._install(T, [_Virtual(0)], "base")
            self._record("base_cycle", {"cycle": ["v1"]}, milestone=True)
            self._expand(0)
        else:
            seq = nested_sequence(self.quotient, 0)
            cyc = list(seq.cycle)
            k = len(cyc)
            base = np.eye(k, dtype=np.int8)
            for a in range(k):
                base[a, (a + 1) % k] = -1
            T = realize_base_cycle(SignPattern(base))
            self._install(T, [_Virtual(c) for c in cyc], "base")
            self._record("base_cycle", {"cycle": [f"v{c + 1}" for c in cyc]}, milestone=True)
            for c in cyc:
                self._expand(c)
            for ear in seq.ears:
                self._attach(ear)
        if [x for x in self.labels if isinstance(x, _Virtual)]:
            raise EngineInvariantBroken("virtual vertices remain after all expansions")
        if sign_of(self.T.M) != self.Y:
            raise EngineInvariantBroken("final pattern differs from the target")
        return self.T

    def _attach(self, ear) -> None:
        comps = list(ear.path)
        p0 = self.red[(ear.attach_from, comps[0])][0][0]
        q0 = self.red[(comps[-1], ear.attach_to)][0][1]
        a = self._entry(p0, q0)
        if a < 0:
            raise EngineInvariantBroken(f"entry ({self._name(p0)}, {self._name(q0)}) is unexpectedly -")
        if a == 0:
            self._perturb(p0, q0, -1, milestone=False)
        first = [p0] if p0 == q0 else [p0, q0]
        front, order = self._front(first)
        j = 0 if p0 == q0 else 1
        k = len(comps)
        op = attach_cycle_positive if a > 0 else attach_cycle_negative
        out = op(front, j, k)
        self._install(out, [_Virtual(c) for c in comps] + order, op.__name__)
        self._record(op.__name__, {"from": self._name(p0), "to": self._name(q0),
                                   "path": [f"v{c + 1}" for c in comps]}, milestone=True)
        for c in comps:
            self._expand(c)

    def _expand(self, c: int) -> None:
        part = self.parts[c]
        vc = _Virtual(c)
        incoming = self._off_diagonal(vc, axis=0)
        outgoing = self._off_diagonal(vc, axis=1)
        if len(incoming) > 1 or len(outgoing) > 1:
            raise EngineInvariantBroken(f"v{c + 1} has more than one incoming or outgoing entry")
        r_in = incoming[0] if incoming else None
        c_out = outgoing[0] if outgoing else None
        p_s = self.red[(c, self._component_of(c_out))][0][0] if c_out is not None else min(part)
        q_s = self.red[(self._component_of(r_in), c)][0][1] if r_in is not None else None
        sub = self.graph.induced(part)
        if is_directed_cycle(sub):
            self._expand_cycle(c, sub, p_s, q_s)
            return
        plan = self._plan(sub, p_s, q_s)
        if plan is None:
            raise EngineInvariantBroken(
                f"no ear sequence of component {[self.names[x] for x in part]} supports "
                f"routing the incoming entry to {self._name(q_s)}")
        seq, transposed = plan
        if transposed:
            self.T = self.T.transposed()
            self.transposed = True
            try:
                self._expand_eared(c, seq, q_s, p_s, c_out)
            finally:
                self.T = self.T.transposed()
                self.transposed = False
        else:
            self._expand_eared(c, seq, p_s, q_s, r_in)

    def _expand_cycle(self, c: int, sub: Digraph, p_s: int, q_s) -> None:
        positions = [sub.successors(p_s)[0]]
        while positions[-1] != p_s:
            positions.append(sub.successors(positions[-1])[0])
        k = len(positions)
        j = positions.index(q_s) if q_s is not None else k - 1
        front, order = self._front([_Virtual(c)])
        out = split_leading_diagonal(front, k, Cycle(j))
        self._install(out, positions + order[1:], "split_leading_diagonal")
        self._record("split_leading_diagonal",
                     {"component": f"v{c + 1}", "cycle": [self._name(x) for x in positions],
                      "variant": "cycle", "landing": self._name(positions[j])}, milestone=True)

    @staticmethod
    def _routable(seq: NestedSequence, q) -> bool:
        """Whether the incoming entry can be carried to ``q`` through the chord variants."""
        if q is None:
            return True
        kq = seq.ear_index_of(q) + 1
        for i in range(kq - 2):
            path, nxt = seq.ears[i].path, seq.ears[i + 1]
            if nxt.attach_from not in path or nxt.attach_to not in path:
                return False
        return True

    def _plan(self, sub: Digraph, p_s: int, q_s):
        seq = nested_sequence(sub, p_s)
        if self._routable(seq, q_s):
            return seq, False
        for alt in iter_nested_sequences(sub, p_s):
            if self._routable(alt, q_s):
                return alt, False
        rev = sub.reversed()
        for alt in [nested_sequence(rev, q_s), *iter_nested_sequences(rev, q_s)]:
            if self._routable(alt, p_s):
                return alt, True
        return None

    def _expand_eared(self, c: int, seq: NestedSequence, p, q, r_in) -> None:
        vc = _Virtual(c)
        positions = list(seq.cycle[1:]) + [seq.cycle[0]]
        k = len(positions)
        kq = seq.ear_index_of(q) + 1 if q is not None else 1
        relocate_until = kq if kq > 1 else 0
        ears = seq.ears
        x0, z0 = ears[0].attach_from, ears[0].attach_to
        landing = z0 if relocate_until else q
        front, order = self._front([vc])
        labels = positions + order[1:]
        cname = f"v{c + 1}"
        if landing is None or landing == z0:
            if x0 == p:
                variant = SplitEntry(positions.index(z0))
            else:
                variant = Chord(positions.index(x0), positions.index(z0))
            variant = resolve_split_variant(front, k, variant)
            out = split_leading_diagonal(front, k, variant)
            self._install(out, labels, "split_leading_diagonal")
            self._record("split_leading_diagonal",
                         {"component": cname, "cycle": [self._name(x) for x in positions],
                          "variant": type(variant).__name__.lower(),
                          "chord": [self._name(x0), self._name(z0)],
                          "landing": self._name(z0)},
                         epsilon=variant.eps, milestone=True)
        else:
            j = positions.index(landing)
            out = split_leading_diagonal(front, k, Cycle(j))
            self._install(out, labels, "split_leading_diagonal")
            self._record("split_leading_diagonal",
                         {"component": cname, "cycle": [self._name(x) for x in positions],
                          "variant": "cycle", "landing": self._name(landing)})
            self._perturb(x0, z0, +1, milestone=True)

        for i, ear in enumerate(ears):
            t = i + 2
            relocating = t <= relocate_until
            nxt = ears[i + 1] if i + 1 < len(ears) else None
            target = None
            if relocating:
                target = q if t == kq else nxt.attach_to
            x, z, path = ear.attach_from, ear.attach_to, list(ear.path)
            lead = [x] if x == z else [x, z]
            if relocating:
                if r_in not in self.labels:
                    raise EngineInvariantBroken("incoming entry vanished before relocation")
                lead_set = set(lead) | {r_in}
                others = [lab for lab in self.labels if lab not in lead_set]
                front, order = self._front(lead + others + [r_in])
            else:
                front, order = self._front(lead)
            n = front.order
            j = 0 if x == z else 1
            split_row = n - 1 if relocating else n
            if relocating and front.M[n - 1, j] == 0:
                raise EngineInvariantBroken("incoming entry is not in the chord column")
            inside = nxt is not None and nxt.attach_from in path and nxt.attach_to in path
            chord_params = {"component": cname, "path": [self._name(v) for v in path],
                            "replaces": [self._name(x), self._name(z)],
                            "relocated": self._name(r_in) if relocating else None}
            if inside and (not relocating or target == nxt.attach_to):
                if nxt.attach_from == path[-1]:
                    variant = SplitTerminal(path.index(nxt.attach_to))
                else:
                    variant = EarChord(path.index(nxt.attach_from), path.index(nxt.attach_to))
                variant = resolve_expand_variant(front, len(path), j, split_row, variant)
                out = expand_component(front, len(path), j, split_row, variant)
                self._install(out, path + order, "expand_component")
                chord_params.update(variant=type(variant).__name__.lower(),
                                    chord=[self._name(nxt.attach_from), self._name(nxt.attach_to)])
                self._record("expand_component", chord_params, epsilon=variant.eps, milestone=True)
            else:
                s = path.index(target) if target is not None else 0
                out = expand_component(front, len(path), j, split_row, Plain(s))
                self._install(out, path + order, "expand_component")
                chord_params.update(variant="plain", landing=self._name(path[s]))
                self._record("expand_component", chord_params, milestone=nxt is None)
                if nxt is not None:
                    self._perturb(nxt.attach_from, nxt.attach_to, +1, milestone=True)


def realize_zero_diagonal(Y: SignPattern, names: list[str] | None = None
                          ) -> tuple[EigenTriple, ConstructionTrace]:
    """Certified matrix in ``Q(Y)`` for a zero-diagonal, minimally AP-irreducible ``Y``.

    Returns the triple in ``Y``'s index order together with every
    intermediate step; the milestone steps are the patterns that the
    nested-sequence argument names explicitly.
    """
    names = [str(i + 1) for i in range(Y.n)] if names is None else list(names)
    trace = ConstructionTrace()
    engine = _Engine(Y, names, trace)
    try:
        T = engine.run()
    except (VerdictError, NumericalFailure) as exc:
        # preconditions were accepted, so a construction refusing its input is an engine fault
        raise EngineInvariantBroken(f"{type(exc).__name__}: {exc}") from exc
    return T, trace


# -- full pipeline -------------------------------------------------------------

def _contract_split_pair(T: EigenTriple, labels: list, first: int, second: int) -> EigenTriple:
    """Contract the pair with ``first`` (row only toward ``second``) merged at index 0."""
    pos = {x: i for i, x in enumerate(labels)}
    rest = [pos[x] for x in labels if x not in (first, second)]
    front = T.permuted([pos[first], pos[second]] + rest)
    row_second = front.M[1, 2:]
    col_first = front.M[2:, 0]
    if np.all(row_second <= 0):
        return contract_pair(front)
    if np.all(col_first <= 0):
        flipped = T.transposed().permuted([pos[second], pos[first]] + rest)
        return contract_pair(flipped).transposed()
    raise EngineInvariantBroken("split pair has + entries on both sides; the merged diagonal may not be +")


def realize(A: SignPattern) -> Realization:
    """Certified algebraically positive matrix whose sign pattern is exactly ``A``."""
    reason = sufficient_condition_failure(A)
    if reason is not None:
        hint = ""
        if sufficient_condition_holds(-A):
            hint = "; the negated pattern satisfies the condition, so realize -A and negate"
        raise HypothesisFails(reason + hint)
    X = minimal_ap_subpattern(A, allow_fallback=True)
    Y, smap = split_positive_diagonals(X)
    names = smap.names()
    T, trace = realize_zero_diagonal(Y, names)

    labels = list(range(Y.n))
    for x, first, second in smap.pairs:
        T = _contract_split_pair(T, labels, first, second)
        labels = [first] + [y for y in labels if y not in (first, second)]
        names[first] = str(x + 1)
        problems = T.problems(CERTIFY_RTOL)
        if problems:
            raise EngineInvariantBroken("after contraction: " + "; ".join(problems))
        trace.append(TraceStep("contract_pair", {"index": str(x + 1)}, None,
                               tuple(names[y] for y in labels), sign_of(T.M), T.residuals(),
                               phase="contract"))
    order = sorted(range(len(labels)), key=lambda i: smap.y_to_x[labels[i]])
    T = T.permuted(order)
    if sign_of(T.M) != X:
        raise EngineInvariantBroken("contracted matrix does not have the subpattern's signs")

    if X != A:
        try:
            T = perturb_to_superpattern(T, A)
        except SignApError as exc:
            raise EngineInvariantBroken(f"lift to the full pattern failed: {exc}") from exc
        T = EigenTriple(T.M / T.lam, 1.0, T.u / np.max(T.u), T.v / np.max(T.v))
        trace.append(TraceStep("perturb", {"added": A.nnz - X.nnz}, None,
                               tuple(str(i + 1) for i in range(A.n)), sign_of(T.M),
                               T.residuals(), phase="lift"))
    verdict, poly = verify_algebraic_positivity(T.M)
    if not verdict.positive or sign_of(T.M) != A:
        raise EngineInvariantBroken(f"final matrix failed certification: {verdict.reason}")
    u = T.u / np.max(T.u)
    v = T.v / np.max(T.v)
    return Realization(A, T.M, T.lam, u, v, poly, trace, X)

