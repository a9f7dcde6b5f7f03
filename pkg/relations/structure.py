from pydantic import BaseModel, Field

from config import config


class RelationDocument(BaseModel):
    schema_version: int = Field(default=config.SCHEMA_VERSION, description="version of the document layout")
    arity: int = Field(description="number n of components of every member", ge=1)
    dim: int = Field(description="dimension k: every component is a k-tuple", ge=1)
    orbits: list[list[int]] = Field(description="rank tuples of length arity*dim, sorted")
    names: list[str] | None = Field(default=None, description="optional component names")


class TermNode(BaseModel):
    op: str = Field(description="'gen' or an operation tag such as 'min' or 'dual:ll'")
    index: int | None = Field(default=None, description="generator index for 'gen' nodes")
    alignment: dict | None = Field(default=None, description="joint rank tuple, left width and threshold flag")
    left: int | None = Field(default=None, description="node table index of the left argument")
    right: int | None = Field(default=None, description="node table index of the right argument")


class TermDocument(BaseModel):
    nodes: list[TermNode] = Field(description="node table, arguments before their applications")
    root: int = Field(description="index of the root node")
    generators: list[list[int]] = Field(default_factory=list, description="orbit bound to each generator")


class CertificateDocument(BaseModel):
    schema_version: int = Field(default=config.SCHEMA_VERSION)
    kind: str = Field(description="operation whose construction produced the certificate")
    components: list[list[int | str]] = Field(description="ground values of the n components")
    orbit: list[int] = Field(description="orbit of the concatenated tuple")
    M: list[int] = Field(description="components attaining the global minimum")
    common_minx: list[int] = Field(description="argmin set shared by the components in M")
    term: TermDocument | None = Field(default=None, description="witness term, when tracked")


class PseudoLoopDocument(BaseModel):
    schema_version: int = Field(default=config.SCHEMA_VERSION)
    clone: str = Field(description="operation tag the relation is preserved by")
    components: list[list[int | str]] = Field(description="ground values of the n components")
    orbit: list[int] = Field(description="orbit of the concatenated tuple")
    shared_orbit: list[int] = Field(description="the one orbit every component lies in")
    is_loop: bool = Field(description="whether all components are equal")
    term: TermDocument = Field(description="witness term over the relation's basis")


class AssignmentOutcome(BaseModel):
    index: int = Field(description="position of the assignment in the enumeration")
    assignment: list[int] = Field(description="joint orbit of the concatenated vertex tuples")
    success: bool
    shared_orbit: list[int] | None = Field(default=None, description="orbit every side evaluates to")
    witness: int | None = Field(default=None, description="index into the report's witness terms")
    diagnostic: str | None = Field(default=None, description="error message on failure")
    seconds: float | None = Field(default=None, description="wall time, only when timings are requested")


class ConditionReportDocument(BaseModel):
    schema_version: int = Field(default=config.SCHEMA_VERSION)
    structure: str = Field(description="preset name or structure file")
    identities: list[str] = Field(description="the pseudo-loop condition as identities")
    clone: str
    k: int
    hypotheses: dict = Field(description="hypothesis flags of the structure")
    assignments: int = Field(description="number of joint assignment orbits checked")
    verified: int = Field(description="number of classes with a replayed witness")
    success: bool
    witnesses: list[TermDocument] = Field(default_factory=list, description="distinct witness terms, one per indicator class")
    outcomes: list[AssignmentOutcome]


class ClassificationDocument(BaseModel):
    schema_version: int = Field(default=config.SCHEMA_VERSION)
    arity: int
    dim: int
    preserved: dict[str, bool] = Field(description="operation tag -> preserved")
    note: str | None = Field(default=None, description="remark when no listed operation preserves the relation")


class StructureDocument(BaseModel):
    schema_version: int = Field(default=config.SCHEMA_VERSION)
    name: str = Field(default="custom")
    vertices: list[str] = Field(description="vertex names")
    edges: list[list[str]] = Field(description="edges as tuples of vertex names, in enumeration order")
