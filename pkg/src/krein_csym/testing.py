"""Random Krein-space test objects with known answers.

These generators are used by the test-suite and the demos. Each one builds
its object from ingredients with a closed-form answer (a transition
operator, a prescribed real spectrum) so that results can be compared with
the truth rather than with another run of the same code.
"""

import numpy as np

from .krein_core import KreinStructure


def random_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_fundamental_symmetry(n, n_plus=None, rng=None, diagonal=False):
    """Random Krein structure on ``C^n`` with ``n_plus`` positive directions."""
    rng = np.random.default_rng(rng)
    if n_plus is None:
        n_plus = int(rng.integers(1, n))
    signs = np.r_[np.ones(n_plus), -np.ones(n - n_plus)]
    if diagonal:
        return KreinStructure(np.diag(signs))
    q = random_unitary(n, rng)
    j = (q * signs) @ q.conj().T
    return KreinStructure(0.5 * (j + j.conj().T))


def random_parity_symmetry(n, rng=None):
    """Random parity-type ``J``: an involutive permutation, with signs on its fixed points.

    At least one pair of indices is swapped, so ``J`` is not diagonal and
    both eigenspaces are nontrivial. Its entries are 0 and +-1, so products
    with ``J`` are exact in floating point.
    """
    rng = np.random.default_rng(rng)
    if n < 2:
        raise ValueError("need n >= 2")
    idx = rng.permutation(n)
    pairs = int(rng.integers(1, n // 2 + 1))
    j = np.zeros((n, n))
    for p, q in zip(idx[0:2 * pairs:2], idx[1:2 * pairs:2]):
        j[p, q] = j[q, p] = 1.0
    for p in idx[2 * pairs:]:
        j[p, p] = rng.choice([-1.0, 1.0])
    return KreinStructure(j)


def random_transition(ks, norm, rng=None):
    """Random transition operator ``E+ K E-* + E- K* E+*`` with ``||T|| = norm``."""
    rng = np.random.default_rng(rng)
    k = (rng.standard_normal((ks.n_plus, ks.n_minus))
         + 1j * rng.standard_normal((ks.n_plus, ks.n_minus)))
    k *= norm / np.linalg.norm(k, 2)
    ep, em = ks.basis_plus, ks.basis_minus
    t = ep @ k @ em.conj().T
    return t + t.conj().T


def _j_orthogonal_eigenbasis(ks, t, rng):
    eye = np.eye(ks.n)
    cols, signs = [], []
    for e, sign in ((ks.basis_plus, 1.0), (ks.basis_minus, -1.0)):
        b = (eye + t) @ e @ random_unitary(e.shape[1], rng)
        g = b.conj().T @ ks.J @ b
        mu, v = np.linalg.eigh(0.5 * (g + g.conj().T))
        w = b @ v / np.sqrt(np.abs(mu))
        cols.append(w)
        signs.append(np.full(e.shape[1], sign))
    return np.hstack(cols), np.concatenate(signs)


def _spread_eigenvalues(n, rng, low=-5.0, high=5.0, gap=0.2):
    while True:
        lam = rng.uniform(low, high, n)
        if n < 2 or np.min(np.diff(np.sort(lam))) >= gap:
            return lam


def random_c_symmetric(ks, t_norm=0.8, rng=None, eigenvalues=None):
    """Random J-self-adjoint matrix with a known C-symmetry.

    Returns
    -------
    A : ndarray
        J-self-adjoint, diagonalisable, real simple spectrum, eigenvectors
        in ``L+ = (I+T)H+`` (positive) and ``L- = (I+T)H-`` (negative).
    C : ndarray
        ``J (I - T)(I + T)^-1``, the unique C-symmetry of ``A``.
    T : ndarray
        The transition operator used.
    eigenvalues : ndarray
        Eigenvalues attached to the columns of the eigenbasis.
    """
    rng = np.random.default_rng(rng)
    t = random_transition(ks, t_norm, rng)
    w, s = _j_orthogonal_eigenbasis(ks, t, rng)
    lam = _spread_eigenvalues(ks.n, rng) if eigenvalues is None else np.asarray(eigenvalues, float)
    # W* J W = diag(s), so W^-1 = diag(s) W* J
    a = (w * (lam * s)) @ w.conj().T @ ks.J
    eye = np.eye(ks.n)
    c = ks.J @ np.linalg.solve(eye + t, eye - t)
    return a, c, t, lam


def random_broken_pair(ks, t_norm=0.8, rng=None):
    """Random J-self-adjoint matrix with exactly one complex conjugate eigenvalue pair.

    The pair lives on the span of one positive and one negative eigenvector
    of the construction in :func:`random_c_symmetric`, where the 2x2 block
    ``diag(1, -1) [[x, y], [conj(y), z]]`` has ``|y| > |x + z| / 2``.

    Returns
    -------
    A : ndarray
    pair : complex
        The eigenvalue of the pair with positive imaginary part.
    """
    rng = np.random.default_rng(rng)
    t = random_transition(ks, t_norm, rng)
    w, s = _j_orthogonal_eigenbasis(ks, t, rng)
    lam = _spread_eigenvalues(ks.n, rng)
    m = np.diag(lam).astype(complex)
    p, q = 0, ks.n_plus  # first positive and first negative column
    x, z = rng.uniform(-3, 3, 2)
    y = (abs(x + z) / 2 + rng.uniform(0.5, 2.0)) * np.exp(2j * np.pi * rng.uniform())
    h = np.array([[x, y], [np.conj(y), z]])
    m[np.ix_([p, q], [p, q])] = np.diag([1.0, -1.0]) @ h
    a = w @ m @ np.diag(s) @ w.conj().T @ ks.J
    pair = np.linalg.eigvals(np.diag([1.0, -1.0]) @ h)
    return a, pair[np.argmax(pair.imag)]


def random_j_self_adjoint(ks, rng=None):
    """``J H`` for a random Hermitian ``H``; generically has complex eigenvalues."""
    rng = np.random.default_rng(rng)
    z = rng.standard_normal((ks.n, ks.n)) + 1j * rng.standard_normal((ks.n, ks.n))
    return ks.J @ (z + z.conj().T) / 2
