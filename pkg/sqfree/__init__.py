from sqfree.core import MonomialIdeal  # noqa
from sqfree.core import SimplicialComplex  # noqa
from sqfree.core import SquareFreeMonomial  # noqa
from sqfree.core import VariableSet  # noqa
from sqfree.core import format, parse  # noqa
from sqfree.duality import CoverComplex, NonfaceComplexView  # noqa
from sqfree.homalg import BettiTable, FieldSpec, HomologyProfile  # noqa
from sqfree.linquo import QuotientOrder  # noqa
from sqfree.trees import ForestVerdict  # noqa
from sqfree.__version__ import version as __version__  # noqa
