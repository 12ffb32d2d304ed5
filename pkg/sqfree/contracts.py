"""Serializable artifacts: certificates and reports.

Monomials leave the process as lists of variable names, and every
certificate carries its variable list so it can be read on its own.
"""
import dataclasses
from dataclasses import dataclass
from datetime import datetime
from typing import Any, ClassVar, Dict, List, Optional, Sequence

from mashumaro import DataClassDictMixin

from sqfree.__version__ import version
from sqfree.core import SquareFreeMonomial, VariableSet

SCHEMA_VERSION = "sqfree/report/v1"


def _utcnow() -> datetime:
    return datetime.utcnow()


def names(ambient: VariableSet, monomials: Sequence[SquareFreeMonomial]) -> List[List[str]]:
    return [ambient.names_of(monomial) for monomial in monomials]


@dataclass
class Certificate(DataClassDictMixin):
    kind: ClassVar[str] = "certificate"


@dataclass
class CoverListCertificate(Certificate):
    vars: List[str]
    covers: List[List[str]]
    kind: ClassVar[str] = "covers"


@dataclass
class ForestWitnessCertificate(Certificate):
    vars: List[str]
    is_forest: bool
    # "leaf_order" when is_forest, "leafless" otherwise
    witness_kind: str
    facets: List[List[str]]
    kind: ClassVar[str] = "forest_witness"


@dataclass
class QuotientOrderCertificate(Certificate):
    vars: List[str]
    order: List[List[str]]
    colon_vars: List[List[str]]
    component: Optional[int] = None
    kind: ClassVar[str] = "quotient_order"


@dataclass
class ShellingCertificate(Certificate):
    vars: List[str]
    shelling: List[List[str]]
    kind: ClassVar[str] = "shelling"


@dataclass
class HomologyRow(DataClassDictMixin):
    skeleton: int
    ideal: str
    cohen_macaulay: bool
    obstruction_face: Optional[List[str]] = None
    obstruction_degree: Optional[int] = None
    link_homology: Optional[List[int]] = None


@dataclass
class HomologyTable(Certificate):
    field: str
    rows: List[HomologyRow]
    kind: ClassVar[str] = "homology"


@dataclass
class ReportMetadata(DataClassDictMixin):
    schema_version: str = SCHEMA_VERSION
    sqfree_version: str = version
    generated_at: datetime = dataclasses.field(default_factory=_utcnow)


@dataclass
class Report(DataClassDictMixin):
    command: str
    input: str
    field: Optional[str] = None
    verdicts: Dict[str, Any] = dataclasses.field(default_factory=dict)
    results: Dict[str, Any] = dataclasses.field(default_factory=dict)
    certificates: Dict[str, Dict[str, Any]] = dataclasses.field(default_factory=dict)
    elapsed: float = 0.0
    metadata: ReportMetadata = dataclasses.field(default_factory=ReportMetadata)

    def add_certificate(self, certificate: Certificate, suffix: str = ""):
        self.certificates[certificate.kind + suffix] = certificate.to_dict()
