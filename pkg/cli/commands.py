"""Subcommand implementations behind ``main.py``.

Every command takes a ``RunConfig`` and returns either a pydantic document or
plain text; ``emit`` writes it to ``--out`` or prints it on stdout. Logs go to
the logger handlers only, so identical runs print identical bytes.
"""

import os
import sys
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from config import config
from errors import BudgetExceeded, ParseError
from loopcond.structures import ConditionStructure, load_structure, preset
from loopcond.verify import verify_condition
from ops.temporal_ops import OpKind, SUPPORTED, dual_of
from orbits.factor import is_weakly_connected, pseudo_algebraic_length_one
from orbits.weak_order import count_weak_orders, enumerate_weak_orders
from pseudoloop.search import find_pseudoloop, hypotheses
from relations.closure import closure, preserves
from relations.generate import generate_instances
from relations.relation import checks
from relations.relation_io import dumps, load_relation, relation_to_document, save_relation, write_document
from relations.structure import ClassificationDocument, ConditionReportDocument, PseudoLoopDocument, RelationDocument

logger = get_logger(__name__)


class RunConfig(BaseModel):
    command: str
    inputs: list[str] = Field(default_factory=list, description="relation or structure files")
    clone: str = Field(default="min", description="operation tag, e.g. 'mi' or 'dual:ll'")
    k: int = Field(default=1, description="dimension of assignments and orbit listings")
    budget_orbits: int | None = Field(default=None, gt=0, description="orbit bound; CLOSURE_BUDGET or GENERATION_BUDGET when unset")
    seed: int = Field(default_factory=lambda: config.DEFAULT_SEED)
    out: str | None = Field(default=None, description="output file (directory for generate)")
    preset: str | None = Field(default=None, description="named structure for loopcond")
    workers: int = Field(default_factory=lambda: config.MAX_WORKERS, gt=0)
    timings: bool = False
    arity: int = Field(default=2, ge=1)
    count: int = Field(default=10, gt=0)

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        """Raises ParseError for flag values outside their ranges."""
        values = {key: value for key, value in vars(args).items() if value is not None}
        try:
            return cls.model_validate(values)
        except ValidationError as e:
            raise ParseError(f"Invalid arguments: {e}") from e

    def operation(self) -> OpKind:
        return OpKind.parse(self.clone)

    def single_input(self) -> str:
        if len(self.inputs) != 1:
            raise ParseError(f"{self.command} expects exactly one input file, got {len(self.inputs)}")
        return self.inputs[0]


def emit(result: BaseModel | str, out: str | None) -> None:
    if out is None:
        text = dumps(result) if isinstance(result, BaseModel) else result + "\n"
        print(text, end="")
    elif isinstance(result, BaseModel):
        write_document(result, out)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(result + "\n", encoding="utf-8")
        logger.info(f"Wrote {out}")


def cmd_orbits(cfg: RunConfig) -> str:
    """Count and list of all weak orders of length k."""
    if cfg.k < 1:
        raise ParseError(f"k must be at least 1, got {cfg.k}")
    if cfg.k > config.MAX_ENUM_ARITY:
        raise BudgetExceeded(f"k = {cfg.k} exceeds the enumeration bound {config.MAX_ENUM_ARITY}")
    rows = [" ".join(str(r) for r in o) for o in enumerate_weak_orders(cfg.k)]
    return "\n".join([f"{count_weak_orders(cfg.k)} orbits of length {cfg.k}"] + rows)


def cmd_check(cfg: RunConfig) -> str:
    R = load_relation(cfg.single_input())
    flags = checks(R).to_dict()
    del flags["invariant_under"]
    if R.n == 2:
        flags["pseudo_algebraic_length_one"] = pseudo_algebraic_length_one(R)[0]
        flags["weakly_connected"] = is_weakly_connected(R)
    flags["hypotheses_hold"] = hypotheses(R).satisfied
    width = max(len(name) for name in flags)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in flags.items())


def cmd_classify(cfg: RunConfig) -> ClassificationDocument:
    """Preservation by min, mi, mx, ll and const, plain and dual."""
    R = load_relation(cfg.single_input())
    preserved = {}
    for kind in SUPPORTED:
        for op in (kind, dual_of(kind)):
            preserved[str(op)] = preserves(op, R)
    note = None
    if not any(preserved.values()):
        note = "No listed operation preserves the relation; no pseudo-loop construction applies"
        logger.warning(note)
    return ClassificationDocument(arity=R.n, dim=R.k, preserved=preserved, note=note)


def cmd_closure(cfg: RunConfig) -> RelationDocument:
    R = load_relation(cfg.single_input())
    closed = closure(R, cfg.operation(), cfg.budget_orbits)
    logger.info(f"Closure under {cfg.clone}: {len(R)} -> {len(closed)} orbits")
    return relation_to_document(closed)


def cmd_pseudoloop(cfg: RunConfig) -> PseudoLoopDocument:
    R = load_relation(cfg.single_input())
    loop = find_pseudoloop(R, cfg.operation())
    logger.info(f"Pseudo-loop {loop.orbit} (loop: {loop.is_loop})")
    return loop.to_document(R.basis)


def _structure(cfg: RunConfig) -> ConditionStructure:
    if cfg.preset is not None:
        return preset(cfg.preset)
    if cfg.inputs:
        return load_structure(cfg.single_input())
    raise ParseError("loopcond needs --preset or a structure file")


def cmd_loopcond(cfg: RunConfig) -> ConditionReportDocument:
    if cfg.k < 1:
        raise ParseError(f"k must be at least 1, got {cfg.k}")
    return verify_condition(_structure(cfg), cfg.operation(), cfg.k, cfg.workers, cfg.timings,
                            cfg.budget_orbits)


def cmd_generate(cfg: RunConfig) -> str:
    """Writes instance_NNN.json files into --out (default OUTPUT_DIR/generated)."""
    if cfg.k < 1:
        raise ParseError(f"k must be at least 1, got {cfg.k}")
    instances = generate_instances(cfg.operation(), cfg.arity, cfg.k, cfg.count, cfg.seed,
                                   budget=cfg.budget_orbits)
    target = Path(cfg.out or Path(config.OUTPUT_DIR) / "generated")
    paths = [save_relation(R, target / f"instance_{i:03d}.json") for i, R in enumerate(instances)]
    return "\n".join(str(p) for p in paths)


COMMANDS = {
    "orbits": cmd_orbits,
    "check": cmd_check,
    "classify": cmd_classify,
    "closure": cmd_closure,
    "pseudoloop": cmd_pseudoloop,
    "loopcond": cmd_loopcond,
    "generate": cmd_generate,
}


def run_command(cfg: RunConfig) -> int:
    """Run one command and emit its result; 1 when a condition report is not a success."""
    result = COMMANDS[cfg.command](cfg)
    out = None if cfg.command == "generate" else cfg.out
    emit(result, out)
    if isinstance(result, ConditionReportDocument) and not result.success:
        logger.error(f"{result.assignments - result.verified} assignments failed")
        return 1
    return 0
