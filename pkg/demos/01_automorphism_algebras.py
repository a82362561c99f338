"""Compute the infinitesimal CR automorphism algebras of the catalog models.

Each model is a real hypersurface in C^2 built from a smooth germ P that
vanishes to infinite order at the origin.  The solver samples the tangency
identity on a (t, z2) grid, extracts the numerical null space, and labels
the basis against a dictionary of canonical fields.
"""

from crlab import (
    M_NONMINIMAL,
    ModelSpec,
    ONE_NONMINIMAL,
    get_germ,
    solve_model,
)


def show(title, basis, report):
    print(f"\n{title}")
    print(f"  dimension      : {basis.dimension}  ({basis.status})")
    print(f"  spectral gap   : {basis.gap:.2e}")
    print(f"  basis          : {basis.labels}")
    print(f"  validation sup : {max(report['validation_residuals'], default=0.0):.2e}")


def main():
    # Rotationally symmetric flat germ: rotation in z2 survives alongside
    # the scaling field z1 d/dz1 that every model in this family carries.
    m = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    show("exp(-1/|z|) model", *solve_model(m))

    # Breaking the rotational symmetry removes the rotation field.
    m = ModelSpec(ONE_NONMINIMAL, get_germ("p2"))
    show("exp(-1/|z| + Re z) model", *solve_model(m))

    # A tubular germ (depends on Re z2 only) admits imaginary translation,
    # but that field does not vanish at the origin: compare the stability
    # algebra with and without the origin constraint.
    m = ModelSpec(ONE_NONMINIMAL, get_germ("p3"))
    show("tubular model, fields free at 0", *solve_model(m, vanish_at_origin=False))
    show("tubular model, fields vanishing at 0", *solve_model(m, vanish_at_origin=True))

    # On the order-2 family even z1 d/dz1 stops being tangent; only the
    # rotation coming from the symmetric germ remains.
    m = ModelSpec(M_NONMINIMAL, get_germ("p1"), m=2)
    show("order-2 family, exp(-1/|z|) germ", *solve_model(m))


if __name__ == "__main__":
    main()
