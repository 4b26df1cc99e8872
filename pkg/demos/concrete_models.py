"""
Two fibrations as matrix groups
===============================

Two catalog entries come with concrete matrix realizations: the
five-sphere fibering over the complex projective plane (special unitary
total group) and the Stiefel manifold of orthonormal 3-frames in R^6
fibering over an oriented Grassmannian.  This script builds both models
and inspects the structure the verification layer relies on.
"""

import numpy as np

from isofib.liealg import build_model, find_record, killing_form, natural_reductivity_check

for alias in ("su3-hopf", "so6-stiefel"):
    record = find_record(alias)
    model = build_model(record)
    print(f"=== {alias} -> {model.name}")
    print(f"group {model.group_label}, real matrices of size {model.n}")
    print(
        "dims: g={} k1={} k2={} m1={} m={}".format(
            model.dim_g, model.dim_k1, model.dim_k2, model.dim_m1, model.dim_m
        )
    )

    # the invariant metric comes from the negative Killing form; on these
    # algebras it is a single multiple of the Frobenius inner product
    xi = model.g.basis[0]
    ratio = -killing_form(model.g, xi, xi) / np.vdot(xi, xi).real
    print(f"-kappa / frobenius ratio on g: {ratio:.6f}")

    # natural reductivity is what makes one-parameter orbits geodesics;
    # the residual is the worst violation over a basis sweep
    print(f"natural reductivity residual: {natural_reductivity_check(model):.3e}")

    # the center of the total group acts trivially on the base; these are
    # the elements whose displacement will be constant on the total space
    print(f"center elements: {len(model.center_elements)}")

    # vertical subalgebra: the fiber directions sit inside the bigger
    # horizontal space m1 = k2 + m, orthogonally to m
    gram = np.array(
        [
            [model.kappa_ip(a, b) for b in model.k2.basis]
            for a in model.m_basis[:3]
        ]
    )
    print(f"max |<m, k2>| cross term: {np.abs(gram).max():.3e}")
    print()
