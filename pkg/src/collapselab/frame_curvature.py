"""Curvature of a metric presented in an orthonormal frame.

Everything here works from the structure functions of the frame,

    [E_a, E_b] = C^d_{ab} E_d,

via the Koszul formula specialised to orthonormal frames,

    <nabla_{E_a} E_b, E_c> = (C_{abc} - C_{bca} + C_{cab}) / 2 ,

so the same core serves both the cohomogeneity-one radial engine (where the
structure functions depend on r) and the left-invariant homogeneous oracle
(where they are constants).  Frame indices are Euclidean; no index raising
is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# 2-form basis used for the 6x6 curvature operator in dimension 4:
# e0^e1, e0^e2, e0^e3, e2^e3, e3^e1, e1^e2.  The last three are the Hodge
# duals of the first three for the orientation e0^e1^e2^e3.
PAIR_BASIS = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)]


@dataclass
class CurvatureFrame:
    """Pointwise curvature data in an orthonormal frame.

    ``riemann`` is the curvature operator on 2-forms (6x6 symmetric for
    n = 4, k x k in general with k = n(n-1)/2); ``riemann4`` keeps the full
    (n,n,n,n) tensor R(E_a,E_b,E_c,E_d) = <R(E_a,E_b)E_c, E_d> for oracles
    and sectional-curvature sampling.  W+/W- norms use the operator
    (Frobenius) normalisation that makes

        2*chi + 3*tau = (1/4pi^2) int [2|W+|^2 + s^2/24 - |ric0|^2/2] dmu

    hold on the model spaces; |ric0|^2 is the plain tensor norm.
    """

    riemann: np.ndarray
    riemann4: np.ndarray
    ricci: np.ndarray
    scalar: float
    w_plus_norm2: float
    w_minus_norm2: float
    ricci_traceless_norm2: float
    sec_min: float
    sec_max: float
    dim: int = 4

    @property
    def ricci_norm2(self) -> float:
        return float(np.sum(self.ricci * self.ricci))

    @property
    def sup_ricci(self) -> float:
        """Largest |component| of the Ricci tensor in the frame."""
        return float(np.max(np.abs(self.ricci)))

    @property
    def riemann_norm2(self) -> float:
        """Tensor norm |Rm|^2 = R_abcd R^abcd."""
        return float(np.sum(self.riemann4 * self.riemann4))


def levi_civita_coefficients(struct: np.ndarray) -> np.ndarray:
    """Connection coefficients Gamma[a,b,c] = <nabla_{E_a} E_b, E_c>.

    ``struct[a,b,c]`` holds <[E_a,E_b], E_c>.
    """
    c_abc = struct
    c_bca = np.transpose(struct, (2, 0, 1))
    c_cab = np.transpose(struct, (1, 2, 0))
    return 0.5 * (c_abc - c_bca + c_cab)


def riemann_tensor(
    struct: np.ndarray,
    struct_d1: np.ndarray | None = None,
    e0_scale: float = 1.0,
) -> np.ndarray:
    """Full curvature tensor R[a,b,c,d] = <R(E_a,E_b)E_c, E_d>.

    The structure functions may depend on a single parameter r whose
    orthonormal direction is E_0 = e0_scale * d/dr; ``struct_d1`` then holds
    their r-derivatives (None means constants, the homogeneous case).
    """
    n = struct.shape[0]
    gamma = levi_civita_coefficients(struct)
    riem = np.einsum("bce,aed->abcd", gamma, gamma)
    riem -= np.einsum("ace,bed->abcd", gamma, gamma)
    riem -= np.einsum("abe,ecd->abcd", struct, gamma)
    if struct_d1 is not None:
        dgamma = e0_scale * levi_civita_coefficients(struct_d1)
        # E_a(Gamma[b,c,d]) contributes only when a = 0 (resp. b = 0).
        riem[0, :, :, :] += dgamma
        riem[:, 0, :, :] -= dgamma
    return riem


def curvature_operator(riem: np.ndarray) -> np.ndarray:
    """Curvature operator on 2-forms; diagonal entries are the sectional
    curvatures of the frame planes (n = 4 only)."""
    k = len(PAIR_BASIS)
    op = np.empty((k, k))
    for p, (a, b) in enumerate(PAIR_BASIS):
        for q, (c, d) in enumerate(PAIR_BASIS):
            op[p, q] = riem[a, b, d, c]
    return op


def weyl_blocks(op: np.ndarray, scalar: float, orientation: int = 1):
    """Self-dual / anti-self-dual trace-free Weyl blocks of the operator.

    ``orientation=+1`` means the volume form e0^e1^e2^e3; -1 reverses it
    (which swaps the two blocks).
    """
    top, mix, mixt, bot = op[:3, :3], op[:3, 3:], op[3:, :3], op[3:, 3:]
    sgn = 1.0 if orientation >= 0 else -1.0
    a_block = 0.5 * (top + sgn * (mix + mixt) + bot)
    c_block = 0.5 * (top - sgn * (mix + mixt) + bot)
    eye = np.eye(3)
    w_plus = a_block - (np.trace(a_block) / 3.0) * eye
    w_minus = c_block - (np.trace(c_block) / 3.0) * eye
    return w_plus, w_minus


def sectional_extremes(
    riem: np.ndarray,
    n_random: int = 512,
    rng: np.random.Generator | None = None,
) -> tuple[float, float]:
    """Extremes of sectional curvature over sampled 2-planes.

    Samples the frame planes, single-angle mixed planes, and a batch of
    quasi-random orthonormal pairs; adequate for the diagonal metrics used
    here (see docs/conventions.md for the mixed-plane reduction).
    """
    n = riem.shape[0]
    planes_u, planes_v = [], []
    for a in range(n):
        for b in range(a + 1, n):
            u = np.zeros(n)
            v = np.zeros(n)
            u[a], v[b] = 1.0, 1.0
            planes_u.append(u)
            planes_v.append(v)
    # mixed planes: rotate one leg of a frame plane into a third direction
    thetas = np.linspace(0.0, np.pi, 17)[:-1]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if len({a, b, c}) < 3 or b > c:
                    continue
                for th in thetas:
                    u = np.zeros(n)
                    v = np.zeros(n)
                    u[a] = 1.0
                    v[b], v[c] = np.cos(th), np.sin(th)
                    planes_u.append(u)
                    planes_v.append(v)
    if rng is None:
        rng = np.random.default_rng(0)
    u = rng.standard_normal((n_random, n))
    v = rng.standard_normal((n_random, n))
    u /= np.linalg.norm(u, axis=1)[:, None]
    v -= np.einsum("ij,ij->i", u, v)[:, None] * u
    v /= np.linalg.norm(v, axis=1)[:, None]
    planes_u = np.vstack([np.asarray(planes_u), u])
    planes_v = np.vstack([np.asarray(planes_v), v])
    secs = np.einsum("abcd,pa,pb,pc,pd->p", riem, planes_u, planes_v, planes_v, planes_u)
    return float(secs.min()), float(secs.max())


def frame_curvature(
    struct: np.ndarray,
    struct_d1: np.ndarray | None = None,
    e0_scale: float = 1.0,
    orientation: int = 1,
    sec_samples: int = 512,
) -> CurvatureFrame:
    """Assemble a CurvatureFrame from frame structure functions."""
    riem = riemann_tensor(struct, struct_d1, e0_scale)
    return frame_from_riemann(riem, orientation=orientation, sec_samples=sec_samples)


def frame_from_riemann(
    riem: np.ndarray, orientation: int = 1, sec_samples: int = 512
) -> CurvatureFrame:
    """Assemble a CurvatureFrame from a full orthonormal-frame Riemann tensor."""
    n = riem.shape[0]
    # Ric(Y,Z) = sum_a <R(E_a, Y) Z, E_a>
    ricci = np.einsum("abca->bc", riem)
    scalar = float(np.trace(ricci))
    if n == 4:
        op = curvature_operator(riem)
        w_plus, w_minus = weyl_blocks(op, scalar, orientation)
        wp2 = float(np.sum(w_plus * w_plus))
        wm2 = float(np.sum(w_minus * w_minus))
    else:
        k = n * (n - 1) // 2
        op = np.zeros((k, k))
        wp2 = wm2 = 0.0
    ric0 = ricci - (scalar / n) * np.eye(n)
    sec_min, sec_max = sectional_extremes(riem, n_random=sec_samples)
    return CurvatureFrame(
        riemann=op,
        riemann4=riem,
        ricci=ricci,
        scalar=scalar,
        w_plus_norm2=wp2,
        w_minus_norm2=wm2,
        ricci_traceless_norm2=float(np.sum(ric0 * ric0)),
        sec_min=sec_min,
        sec_max=sec_max,
        dim=n,
    )
