"""Domain types shared by all modules: variables, guards, networks,
modes, supports and Boolean formulas.

States are plain tuples of ints aligned with the owning network's
variable order; helpers convert to/from name-keyed dicts for reporting.
All types are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapacityError, SpecificationError

DEFAULT_CAP = 2**22

MVState = tuple[int, ...]
BState = tuple[int, ...]

CMP_OPS = ("=", "!=", "<", "<=", ">", ">=")


# ---------------------------------------------------------------------------
# Guard expressions


@dataclass(frozen=True)
class Atom:
    """Comparison of one variable against a constant level."""

    var: str
    op: str
    const: int

    def __post_init__(self):
        if self.op not in CMP_OPS:
            raise SpecificationError(f"unknown comparison operator {self.op!r}")


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    item: "GuardExpr"


@dataclass(frozen=True)
class And:
    items: tuple["GuardExpr", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["GuardExpr", ...]


GuardExpr = Atom | Const | Not | And | Or

_CMP_FUN = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def eval_guard(guard: GuardExpr, state: Mapping[str, int]) -> bool:
    """Evaluate a guard against a (possibly partial) state.

    Referencing a variable absent from ``state`` is a caller error.
    """
    if isinstance(guard, Const):
        return guard.value
    if isinstance(guard, Atom):
        try:
            value = state[guard.var]
        except KeyError:
            raise SpecificationError(
                f"guard references unbound variable {guard.var!r}"
            ) from None
        return _CMP_FUN[guard.op](value, guard.const)
    if isinstance(guard, Not):
        return not eval_guard(guard.item, state)
    if isinstance(guard, And):
        return all(eval_guard(g, state) for g in guard.items)
    if isinstance(guard, Or):
        return any(eval_guard(g, state) for g in guard.items)
    raise SpecificationError(f"not a guard expression: {guard!r}")


def guard_variables(guard: GuardExpr) -> frozenset[str]:
    """Variables syntactically occurring in a guard."""
    if isinstance(guard, Atom):
        return frozenset((guard.var,))
    if isinstance(guard, Const):
        return frozenset()
    if isinstance(guard, Not):
        return guard_variables(guard.item)
    return frozenset().union(*(guard_variables(g) for g in guard.items))


# ---------------------------------------------------------------------------
# Multi-valued networks


@dataclass(frozen=True)
class MVVariable:
    """A discrete variable ranging over levels 0..max_level."""

    name: str
    max_level: int

    def __post_init__(self):
        if self.max_level < 1:
            raise SpecificationError(
                f"variable {self.name!r}: max level must be >= 1"
            )


@dataclass(frozen=True)
class Rule:
    """One guarded rule: jump to ``level`` when ``guard`` holds.

    Rule order within a variable is significant: the first rule whose
    guard holds wins, and level 0 is the implicit default.
    """

    level: int
    guard: GuardExpr


@dataclass(frozen=True)
class MVNetwork:
    variables: tuple[MVVariable, ...]
    rules: Mapping[str, tuple[Rule, ...]]
    name: str = "network"

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise SpecificationError("duplicate variable names")
        by_name = {v.name: v for v in self.variables}
        for var, rules in self.rules.items():
            if var not in by_name:
                raise SpecificationError(f"rules for undeclared variable {var!r}")
            for rule in rules:
                if not 1 <= rule.level <= by_name[var].max_level:
                    raise SpecificationError(
                        f"rule level {rule.level} out of range 1.."
                        f"{by_name[var].max_level} for variable {var!r}"
                    )
                for ref in guard_variables(rule.guard):
                    if ref not in by_name:
                        raise SpecificationError(
                            f"guard of {var!r} references undeclared "
                            f"variable {ref!r}"
                        )
        object.__setattr__(self, "rules", dict(self.rules))

    @property
    def var_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def max_levels(self) -> dict[str, int]:
        return {v.name: v.max_level for v in self.variables}

    def variable(self, name: str) -> MVVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise SpecificationError(f"unknown variable {name!r}")

    def rules_of(self, name: str) -> tuple[Rule, ...]:
        self.variable(name)
        return tuple(self.rules.get(name, ()))

    def state_count(self) -> int:
        n = 1
        for v in self.variables:
            n *= v.max_level + 1
        return n

    def states(self) -> Iterator[MVState]:
        """All states in mixed-radix lexicographic order (last variable
        varies fastest)."""
        return itertools.product(*(range(v.max_level + 1) for v in self.variables))

    def state_dict(self, state: MVState) -> dict[str, int]:
        return dict(zip(self.var_names, state))


def local_step(net: MVNetwork, var: str, state: Mapping[str, int]) -> int:
    """Next level of ``var``: target of the first rule (in declaration
    order) whose guard holds, 0 when none does."""
    for rule in net.rules_of(var):
        if eval_guard(rule.guard, state):
            return rule.level
    return 0


def is_unitary_stepwise(
    net: MVNetwork, cap: int = DEFAULT_CAP
) -> tuple[bool, list[tuple[str, dict[str, int]]]]:
    """Check that every local update moves each variable by at most one
    level, enumerating the whole state space.

    Returns ``(ok, violations)`` with all violating (variable, state)
    pairs, so models can be repaired in one pass.
    """
    _check_cap(net, cap)
    violations = []
    for state in net.states():
        env = net.state_dict(state)
        for var, value in zip(net.var_names, state):
            if abs(value - local_step(net, var, env)) > 1:
                violations.append((var, env))
    return (not violations, violations)


def _check_cap(net: MVNetwork, cap: int) -> None:
    size = net.state_count()
    if size > cap:
        sizes = " * ".join(str(v.max_level + 1) for v in net.variables)
        raise CapacityError(
            f"state space {sizes} = {size} exceeds enumeration cap {cap}",
            size,
            cap,
        )


# ---------------------------------------------------------------------------
# Modes


@dataclass(frozen=True)
class Mode:
    """A set of modalities; each modality names the variables updated
    jointly in one transition."""

    modalities: tuple[frozenset[str], ...]

    def __post_init__(self):
        seen = []
        for m in self.modalities:
            if not m:
                raise SpecificationError("empty modality in mode")
            if m in seen:
                raise SpecificationError(f"duplicate modality {sorted(m)}")
            seen.append(m)

    def __iter__(self) -> Iterator[frozenset[str]]:
        return iter(self.modalities)

    def __len__(self) -> int:
        return len(self.modalities)

    def variables(self) -> frozenset[str]:
        return frozenset().union(*self.modalities) if self.modalities else frozenset()

    def label(self, index: int) -> str:
        return modality_label(self.modalities[index])

    def validate_over(self, var_names: Iterable[str]) -> None:
        unknown = self.variables() - set(var_names)
        if unknown:
            raise SpecificationError(
                f"mode references unknown variable(s): {sorted(unknown)}"
            )


def modality_label(modality: frozenset[str]) -> str:
    return ",".join(sorted(modality))


def asynchronous_mode(var_names: Sequence[str]) -> Mode:
    return Mode(tuple(frozenset((v,)) for v in var_names))


def parallel_mode(var_names: Sequence[str]) -> Mode:
    return Mode((frozenset(var_names),))


# ---------------------------------------------------------------------------
# Supports


@dataclass(frozen=True)
class SupportMap:
    """Maps each integer variable to the ordered Boolean variables that
    store its code, plus the level range needed to decode them.

    Supports are pairwise disjoint and jointly exhaust the Boolean
    variable set.
    """

    supports: Mapping[str, tuple[str, ...]]
    max_levels: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "supports", dict(self.supports))
        object.__setattr__(self, "max_levels", dict(self.max_levels))
        if set(self.supports) != set(self.max_levels):
            raise SpecificationError("supports and max_levels must share keys")
        seen: set[str] = set()
        for var, names in self.supports.items():
            if not names:
                raise SpecificationError(f"empty support for {var!r}")
            overlap = seen & set(names)
            if overlap:
                raise SpecificationError(
                    f"supports are not pairwise disjoint: {sorted(overlap)}"
                )
            seen |= set(names)

    @property
    def mv_names(self) -> tuple[str, ...]:
        return tuple(self.supports)

    @property
    def bool_names(self) -> tuple[str, ...]:
        return tuple(
            name for var in self.supports for name in self.supports[var]
        )

    def support_of(self, var: str) -> tuple[str, ...]:
        return self.supports[var]

    def owner(self, bool_name: str) -> str:
        for var, names in self.supports.items():
            if bool_name in names:
                return var
        raise SpecificationError(f"{bool_name!r} belongs to no support")


# ---------------------------------------------------------------------------
# Boolean formulas

Literal = tuple[str, bool]  # (variable, positive?)
Term = tuple[Literal, ...]
Dnf = tuple[Term, ...]


@dataclass(frozen=True)
class BVar:
    name: str


@dataclass(frozen=True)
class BConst:
    value: bool


@dataclass(frozen=True)
class BNot:
    item: "BExpr"


@dataclass(frozen=True)
class BAnd:
    items: tuple["BExpr", ...]


@dataclass(frozen=True)
class BOr:
    items: tuple["BExpr", ...]


BExpr = BVar | BConst | BNot | BAnd | BOr


def _literal_key(lit: Literal) -> tuple[str, int]:
    name, positive = lit
    return (name, 0 if positive else 1)


def canonical_dnf(terms: Iterable[Iterable[Literal]]) -> Dnf:
    """Normalize a disjunction of products: drop contradictions and
    duplicate literals, absorb supersets, order terms and literals
    lexicographically by variable name (positive before negative)."""
    cleaned: set[Term] = set()
    for raw in terms:
        lits = set(raw)
        if any((name, not pos) in lits for name, pos in lits):
            continue  # contradictory product
        cleaned.add(tuple(sorted(lits, key=_literal_key)))
    if any(not t for t in cleaned):
        return ((),)  # an empty product is the constant true
    kept = [
        t
        for t in cleaned
        if not any(o != t and set(o) <= set(t) for o in cleaned)
    ]
    return tuple(sorted(kept, key=lambda t: tuple(_literal_key(l) for l in t)))


def _expr_to_dnf(expr: BExpr, negate: bool = False) -> Dnf:
    if isinstance(expr, BConst):
        value = expr.value != negate
        return ((),) if value else ()
    if isinstance(expr, BVar):
        return (((expr.name, not negate),),)
    if isinstance(expr, BNot):
        return _expr_to_dnf(expr.item, not negate)
    items = expr.items
    conjunctive = isinstance(expr, BAnd) != negate
    parts = [_expr_to_dnf(item, negate) for item in items]
    if not conjunctive:
        return canonical_dnf(t for p in parts for t in p)
    acc: Dnf = ((),)
    for part in parts:
        acc = canonical_dnf(a + b for a in acc for b in part)
        if not acc:
            break
    return acc


@dataclass(frozen=True)
class BoolFormula:
    """A propositional formula with its canonical DNF alongside the AST.

    Equality, evaluation and printing all go through the DNF, which is
    deterministic; the AST records how the formula was assembled.
    """

    ast: BExpr
    dnf: Dnf = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.dnf is None:
            object.__setattr__(self, "dnf", _expr_to_dnf(self.ast))

    @staticmethod
    def from_dnf(terms: Iterable[Iterable[Literal]]) -> "BoolFormula":
        dnf = canonical_dnf(terms)
        return BoolFormula(_dnf_to_expr(dnf), dnf)

    @staticmethod
    def false() -> "BoolFormula":
        return BoolFormula(BConst(False), ())

    @staticmethod
    def true() -> "BoolFormula":
        return BoolFormula(BConst(True), ((),))

    def __eq__(self, other) -> bool:
        return isinstance(other, BoolFormula) and self.dnf == other.dnf

    def __hash__(self) -> int:
        return hash(self.dnf)

    @property
    def is_false(self) -> bool:
        return not self.dnf

    @property
    def is_true(self) -> bool:
        return self.dnf == ((),)

    def variables(self) -> frozenset[str]:
        return frozenset(name for term in self.dnf for name, _ in term)

    def evaluate(self, state: Mapping[str, int]) -> bool:
        try:
            return any(
                all(bool(state[name]) == positive for name, positive in term)
                for term in self.dnf
            )
        except KeyError as exc:
            raise SpecificationError(
                f"formula references unbound variable {exc.args[0]!r}"
            ) from None

    def equivalent_to(self, other: "BoolFormula") -> bool:
        """Truth-table equivalence over the union of both variable sets."""
        names = sorted(self.variables() | other.variables())
        for bits in itertools.product((0, 1), repeat=len(names)):
            env = dict(zip(names, bits))
            if self.evaluate(env) != other.evaluate(env):
                return False
        return True

    def __str__(self) -> str:
        return format_dnf(self.dnf)


def _dnf_to_expr(dnf: Dnf) -> BExpr:
    if not dnf:
        return BConst(False)
    if dnf == ((),):
        return BConst(True)
    products: list[BExpr] = []
    for term in dnf:
        lits: list[BExpr] = [
            BVar(n) if pos else BNot(BVar(n)) for n, pos in term
        ]
        products.append(lits[0] if len(lits) == 1 else BAnd(tuple(lits)))
    return products[0] if len(products) == 1 else BOr(tuple(products))


def format_dnf(dnf: Dnf) -> str:
    """Render a DNF the way ``targets, factors`` files expect it:
    ``0``/``1`` constants, ``!`` negation, ``&`` products joined by ``|``,
    products parenthesized only when both levels are non-trivial."""
    if not dnf:
        return "0"
    if dnf == ((),):
        return "1"
    parts = []
    for term in dnf:
        body = " & ".join(n if pos else f"!{n}" for n, pos in term)
        if len(term) > 1 and len(dnf) > 1:
            body = f"({body})"
        parts.append(body)
    return " | ".join(parts)


def minterm(names: Sequence[str], profile: Sequence[int]) -> Term:
    """The product satisfied exactly by ``profile`` over ``names``."""
    if len(names) != len(profile):
        raise SpecificationError("minterm arity mismatch")
    return tuple(
        sorted(
            ((n, bool(b)) for n, b in zip(names, profile)), key=_literal_key
        )
    )


# ---------------------------------------------------------------------------
# Boolean networks


@dataclass(frozen=True)
class BooleanNetwork:
    support_map: SupportMap
    formulas: Mapping[str, BoolFormula]
    mode: Mode

    def __post_init__(self):
        object.__setattr__(self, "formulas", dict(self.formulas))
        declared = set(self.support_map.bool_names)
        if set(self.formulas) != declared:
            missing = declared - set(self.formulas)
            extra = set(self.formulas) - declared
            raise SpecificationError(
                f"formulas must cover the Boolean variables exactly "
                f"(missing {sorted(missing)}, extra {sorted(extra)})"
            )
        for name, formula in self.formulas.items():
            unknown = formula.variables() - declared
            if unknown:
                raise SpecificationError(
                    f"formula of {name!r} references undeclared "
                    f"variable(s) {sorted(unknown)}"
                )
        self.mode.validate_over(declared)

    @property
    def var_names(self) -> tuple[str, ...]:
        return self.support_map.bool_names

    def states(self) -> Iterator[BState]:
        return itertools.product((0, 1), repeat=len(self.var_names))

    def state_dict(self, state: BState) -> dict[str, int]:
        return dict(zip(self.var_names, state))
