"""Reading and writing relation, term and report documents.

Documents are pydantic models dumped as indented JSON. Orbits are written in
sorted order so that equal relations give byte-identical files.
"""

import json
import os
import sys
from pathlib import Path

from pydantic import BaseModel, ValidationError

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from logger_config import get_logger
from errors import ParseError
from orbits.weak_order import WeakOrder
from relations.relation import TemporalRelation
from relations.structure import RelationDocument, TermDocument, TermNode
from relations.terms import Term, term_from_table, term_to_table

logger = get_logger(__name__)


def relation_to_document(R: TemporalRelation) -> RelationDocument:
    return RelationDocument(
        arity=R.n,
        dim=R.k,
        orbits=[o.to_list() for o in R.sorted_orbits],
        names=list(R.names) if R.names is not None else None,
    )


def relation_from_document(doc: RelationDocument) -> TemporalRelation:
    return TemporalRelation.of(doc.arity, doc.dim, (WeakOrder.from_list(o) for o in doc.orbits), doc.names)


def term_to_document(term: Term, basis: tuple[WeakOrder, ...] = ()) -> TermDocument:
    table, root = term_to_table(term)
    return TermDocument(nodes=[TermNode(**node) for node in table], root=root,
                        generators=[o.to_list() for o in basis])


def term_from_document(doc: TermDocument) -> tuple[Term, tuple[WeakOrder, ...]]:
    table = [node.model_dump(exclude_none=True) for node in doc.nodes]
    return term_from_table(table, doc.root), tuple(WeakOrder.from_list(o) for o in doc.generators)


def dumps(doc: BaseModel) -> str:
    return json.dumps(doc.model_dump(), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def write_document(doc: BaseModel, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(doc))
    logger.info(f"Wrote {type(doc).__name__} to {path}")
    return path


def read_document(path: str | Path, model: type[BaseModel]) -> BaseModel:
    """Load and validate a JSON document.

    Raises:
        ParseError: if the file is missing, not JSON or does not match the model.
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return model.model_validate(data)
    except FileNotFoundError as e:
        raise ParseError(f"No such file: {path}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e
    except ValidationError as e:
        raise ParseError(f"{path} is not a valid {model.__name__}: {e}") from e


def load_relation(path: str | Path) -> TemporalRelation:
    R = relation_from_document(read_document(path, RelationDocument))
    logger.info(f"Loaded relation from {path}: arity {R.n}, dim {R.k}, {len(R)} orbits")
    return R


def save_relation(R: TemporalRelation, path: str | Path) -> Path:
    return write_document(relation_to_document(R), path)
