"""Exception and warning classes raised by :mod:`krein_csym`."""

import numpy as np


class KreinError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(KreinError, ValueError):
    """Raised when array shapes are incompatible with the Krein structure."""


class KreinStructureError(KreinError, ValueError):
    """Raised when a matrix is not a valid fundamental symmetry."""


class RankDeficient(KreinError, ValueError):
    """Raised when a subspace basis does not have full column rank."""


class MatrixFormatError(KreinError, ValueError):
    """Raised when a matrix file cannot be parsed or is malformed."""


# transition operators

class TransitionError(KreinError, ValueError):
    """Base class for rejected transition operators."""


class NotHermitian(TransitionError):
    pass


class NotAnticommuting(TransitionError):
    pass


class NormExceedsOne(TransitionError):
    pass


class NearSingular(KreinError, np.linalg.LinAlgError):
    """Raised when a linear solve is singular to working precision."""


class NearSingularWarning(RuntimeWarning):
    """Issued when a solve is badly conditioned but still carried out."""


class FNotPositive(KreinError, ValueError):
    """Raised when ``J @ C`` is not Hermitian positive definite."""


class NotJSelfAdjoint(KreinError, ValueError):
    """Raised when ``A* J != J A`` beyond tolerance."""


class SingularTransformation(NearSingular):
    pass


class GammaCritical(KreinError, ValueError):
    """Raised for quantities of the point-interaction model that do not exist at gamma = 2."""


# obstructions found by construct_c

class CSymmetryObstruction(KreinError):
    """A reason why no C-symmetry could be constructed.

    The attributes mirror the diagnostic report written by the command line
    tool: ``status`` (the class name), ``eigenvalue`` (the offending
    eigenvalue, if any), ``margin`` (the smallest neutrality margin seen, if
    computed) and ``cond`` (condition number of the eigenvector matrix, if
    computed).
    """

    def __init__(self, msg, eigenvalue=None, margin=None, cond=None):
        super().__init__(msg)
        self.eigenvalue = eigenvalue
        self.margin = margin
        self.cond = cond

    @property
    def status(self):
        return type(self).__name__

    def as_dict(self):
        ev = self.eigenvalue
        return {
            "status": self.status,
            "message": str(self),
            "offending_eigenvalue": None if ev is None else [float(np.real(ev)), float(np.imag(ev))],
            "neutrality_margin": None if self.margin is None else float(self.margin),
            "eigenvector_cond": None if self.cond is None else float(self.cond),
        }


class ComplexSpectrum(CSymmetryObstruction):
    pass


class NeutralEigenvector(CSymmetryObstruction):
    pass


class Defective(CSymmetryObstruction):
    pass


class InertiaMismatch(CSymmetryObstruction, DimensionMismatch):
    """The invariant subspaces found do not have the dimensions of H+ and H-."""
