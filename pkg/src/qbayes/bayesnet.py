"""Binary-variable Bayesian network: representation, validation, model files.

A CPT row stores P(var = 1 | parent assignment); P(var = 0 | .) is implicit.
Variable declaration order fixes the qubit index; parents may be declared
after their children, ordering is resolved topologically at compile time.

Model file format (.qbn, YAML):

    variables: [X, Y, FA]
    Y:
      cpt:
        parents: []
        rows: {"": 0.85}
    FA:
      cpt:
        parents: [X, Y]
        rows: {"0,0": 0.7, "0,1": 0.98, "1,0": 0.4, "1,1": 0.95}

Row keys carry one bit per parent, comma separated, in the listed parent
order; roots use the empty key.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import yaml

from .errors import ModelError

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Variable:
    name: str
    index: int


@dataclass(frozen=True)
class CPT:
    parents: tuple[int, ...]
    rows: dict[tuple[int, ...], float]  # parent assignment -> P(var=1)


@dataclass(frozen=True)
class BayesNet:
    variables: tuple[Variable, ...]
    cpts: tuple[CPT, ...]  # one per variable, by index

    @property
    def n(self) -> int:
        return len(self.variables)

    def name_of(self, index: int) -> str:
        return self.variables[index].name

    def index_of(self, name: str) -> int:
        for v in self.variables:
            if v.name == name:
                return v.index
        from .errors import UsageError

        raise UsageError(f"unknown variable {name!r}")


def _assignments(n_parents: int):
    # ascending binary order, first listed parent most significant
    for a in range(1 << n_parents):
        yield tuple((a >> (n_parents - 1 - j)) & 1 for j in range(n_parents))


def validate(net: BayesNet) -> list[str]:
    """Return every violation found; the net is valid iff the list is empty."""
    violations: list[str] = []
    seen: dict[str, int] = {}
    for v in net.variables:
        if not _NAME_RE.match(v.name):
            violations.append(f"invalid variable name {v.name!r}")
        if v.name in seen:
            violations.append(f"duplicate variable name {v.name!r}")
        seen[v.name] = v.index
    if len(net.cpts) != len(net.variables):
        violations.append(
            f"expected {len(net.variables)} CPTs, got {len(net.cpts)}"
        )
        return violations
    n = net.n

    def safe_name(i: int) -> str:
        return net.variables[i].name if 0 <= i < n else f"#{i}"

    for v, cpt in zip(net.variables, net.cpts):
        for p in cpt.parents:
            if not 0 <= p < n:
                violations.append(f"{v.name}: dangling parent index {p}")
            elif p == v.index:
                violations.append(f"{v.name}: variable is its own parent")
        if len(set(cpt.parents)) != len(cpt.parents):
            violations.append(f"{v.name}: duplicate parents")
        k = len(cpt.parents)
        for a in _assignments(k):
            if a not in cpt.rows:
                names = ",".join(
                    f"{safe_name(p)}={b}" for p, b in zip(cpt.parents, a)
                ) or "(prior)"
                violations.append(f"{v.name}: missing CPT row {names}")
        for a, p in cpt.rows.items():
            if len(a) != k:
                violations.append(
                    f"{v.name}: CPT row {a} has {len(a)} bits, expected {k}"
                )
            if not 0.0 <= p <= 1.0:
                violations.append(
                    f"{v.name}: probability out of range: {p!r}"
                )
    cycle = _find_cycle(net)
    if cycle:
        violations.append("cycle: " + " -> ".join(net.name_of(i) for i in cycle))
    return violations


def _find_cycle(net: BayesNet) -> list[int] | None:
    color = [0] * net.n  # 0 white, 1 on stack, 2 done
    stack: list[int] = []

    def visit(i: int) -> list[int] | None:
        color[i] = 1
        stack.append(i)
        for p in net.cpts[i].parents:
            if not 0 <= p < net.n:
                continue
            if color[p] == 1:
                return stack[stack.index(p):] + [p]
            if color[p] == 0:
                found = visit(p)
                if found:
                    return found
        stack.pop()
        color[i] = 2
        return None

    for i in range(net.n):
        if color[i] == 0:
            found = visit(i)
            if found:
                return found
    return None


def topological_order(net: BayesNet) -> list[int]:
    """Kahn's algorithm; ties broken by ascending declaration index."""
    n = net.n
    indeg = [len(net.cpts[i].parents) for i in range(n)]
    children: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for p in net.cpts[i].parents:
            children[p].append(i)
    import heapq

    frontier = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(frontier)
    order: list[int] = []
    while frontier:
        i = heapq.heappop(frontier)
        order.append(i)
        for c in children[i]:
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(frontier, c)
    if len(order) != n:
        cycle = _find_cycle(net)
        names = " -> ".join(net.name_of(i) for i in cycle) if cycle else "?"
        raise ModelError(f"cycle: {names}")
    return order


def parse_model(text: str) -> BayesNet:
    """Parse and validate a .qbn document; raises ModelError on any problem."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ModelError(f"model syntax error: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelError("model must be a mapping with a 'variables' list")
    names = doc.get("variables")
    if not isinstance(names, list) or not names:
        raise ModelError("model is missing a non-empty 'variables' list")
    names = [str(x) for x in names]
    name_to_index = {}
    for i, name in enumerate(names):
        if name in name_to_index:
            raise ModelError(f"duplicate variable name {name!r}")
        name_to_index[name] = i
    variables = tuple(Variable(name, i) for i, name in enumerate(names))
    cpts: list[CPT] = []
    for name in names:
        section = doc.get(name)
        if not isinstance(section, dict) or "cpt" not in section:
            raise ModelError(f"variable {name!r} is missing its 'cpt' section")
        cpt_doc = section["cpt"]
        if not isinstance(cpt_doc, dict):
            raise ModelError(f"{name}: 'cpt' must be a mapping")
        parent_names = cpt_doc.get("parents", [])
        if not isinstance(parent_names, list):
            raise ModelError(f"{name}: 'parents' must be a list")
        parents = []
        for p in parent_names:
            p = str(p)
            if p not in name_to_index:
                raise ModelError(f"{name}: undeclared parent {p!r}")
            parents.append(name_to_index[p])
        rows_doc = cpt_doc.get("rows")
        if not isinstance(rows_doc, dict):
            raise ModelError(f"{name}: 'rows' must be a mapping")
        rows: dict[tuple[int, ...], float] = {}
        for key, value in rows_doc.items():
            bits = _parse_row_key(name, key, len(parents))
            try:
                rows[bits] = float(value)
            except (TypeError, ValueError):
                raise ModelError(f"{name}: row {key!r} has non-numeric probability {value!r}")
        cpts.append(CPT(tuple(parents), rows))
    net = BayesNet(variables, tuple(cpts))
    violations = validate(net)
    if violations:
        raise ModelError("invalid model:\n" + "\n".join(f"  - {v}" for v in violations))
    return net


def _parse_row_key(var: str, key, n_parents: int) -> tuple[int, ...]:
    text = str(key).strip() if key is not None else ""
    if text == "":
        bits: tuple[int, ...] = ()
    else:
        parts = [p.strip() for p in text.split(",")]
        if any(p not in ("0", "1") for p in parts):
            raise ModelError(f"{var}: bad CPT row key {key!r} (expected comma-separated bits)")
        bits = tuple(int(p) for p in parts)
    if len(bits) != n_parents:
        raise ModelError(
            f"{var}: CPT row key {key!r} has {len(bits)} bits, expected {n_parents}"
        )
    return bits


def render_model(net: BayesNet) -> str:
    """Deterministic .qbn text; parse_model(render_model(net)) == net."""
    lines = ["variables: [" + ", ".join(v.name for v in net.variables) + "]"]
    for v, cpt in zip(net.variables, net.cpts):
        lines.append(f"{v.name}:")
        lines.append("  cpt:")
        lines.append(
            "    parents: [" + ", ".join(net.name_of(p) for p in cpt.parents) + "]"
        )
        lines.append("    rows:")
        for a in _assignments(len(cpt.parents)):
            key = ",".join(str(b) for b in a)
            lines.append(f'      "{key}": {net_float(cpt.rows[a])}')
    return "\n".join(lines) + "\n"


def net_float(x: float) -> str:
    # repr round-trips doubles exactly through YAML
    return repr(float(x))


def load_model(path: str) -> BayesNet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelError(f"cannot read model file {path!r}: {exc}") from exc
    return parse_model(text)
