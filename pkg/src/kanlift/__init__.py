"""Finite, exact codensity liftings of monads along posetal fibrations,
with the sub-Giry and density-comonad instances."""

from .finset import FinFun, FinSet, Subset
from .monad import FiniteMonad, powerset_monad
from .fibration import FibreObject, Tag
from .engine import closed_form_lift, codensity_lift, is_closed, phi
from .measurable import LMP, FinMeasSpace, SubProb
from .kantorovich import kantorovich

__all__ = [
    "FinFun", "FinSet", "Subset", "FiniteMonad", "powerset_monad", "FibreObject", "Tag",
    "closed_form_lift", "codensity_lift", "is_closed", "phi", "LMP", "FinMeasSpace",
    "SubProb", "kantorovich",
]
