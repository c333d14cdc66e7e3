"""Smoke test for the Python bindings; run after `pip install ./crates/python`."""

from fractions import Fraction

import toric_deform as td


def check_cone_and_polyhedra():
    sigma = td.Cone([[1, 1, 0], [-1, 1, 0], [0, 0, 1]])
    basis, complete = sigma.dual().hilbert_basis()
    assert complete
    assert sorted(map(tuple, basis)) == [(-1, 1, 0), (0, 0, 1), (0, 1, 0), (1, 1, 0)], basis

    square = td.Polyhedron([[0, 0], [1, 0]]) + td.Polyhedron([[0, 0], [0, 1]])
    assert len(square.lattice_points()) == 4
    half = td.Polyhedron([[Fraction(1, 2), 0]])
    assert half.vertices() == [[Fraction(1, 2), 0]]


def check_ca1():
    sigma = td.Cone([[1, 1, 0], [-1, 1, 0], [0, 0, 1]])
    q0 = td.Polyhedron([[Fraction(-1, 2), Fraction(1, 2), 0]])
    q1 = td.Polyhedron([[0, 0, 0], [1, 0, 0]])
    d = td.DeformationDatum(sigma, [q0, q1], [0, -2, 3])
    assert d.is_valid(), d.validate()
    t = d.tilde()
    assert len(t.rays()) == 4
    aliases = [("x", [0, 0, 0, 1]), ("y", [1, 0, 0, 1]), ("z", [0, 0, 1, 0]), ("u", [-1, 1, 0, -2])]
    eq = t.equations(aliases)
    assert eq.trinomials == ["x*y - u^2 - t1*z^3"], eq.trinomials
    assert eq.monomial == "z*u"
    dz_failures, boundary_failures, pairs = t.oracle(8)
    assert dz_failures == boundary_failures == 0 and pairs > 0

    again = td.DeformationDatum.from_json(d.to_json())
    assert again.to_json() == d.to_json()


def check_invalid_datum():
    sigma = td.Cone([[1, 0], [0, 1]])
    q0 = td.Polyhedron([[0, 0], [1, 0]])
    q1 = td.Polyhedron([[0, 0], [0, 1]])
    d = td.DeformationDatum(sigma, [q0, q1], [-1, -1], boundary=False)
    assert not d.is_valid()
    assert "(ii) failed: 0 ∈ Q" in d.validate()
    try:
        d.tilde()
    except ValueError:
        pass
    else:
        raise AssertionError("tilde of an invalid datum should raise")


def check_mutation():
    p = td.FanoPolytope([[1, 0], [0, 1], [-1, -1]])
    q = p.mutate([-1, 2], [[0, 0], [2, 1]])
    assert sorted(map(tuple, q.vertices())) == [(-1, -1), (0, 1), (4, 3)]
    fam = p.family([-1, 2], [[0, 0], [2, 1]])
    assert fam.trinomial == "a*x^2 + b*y + c*z0*z1"
    assert fam.monomial == "x*y"
    assert sorted(fam.weights()) == [1, 1, 1, 2]
    source = fam.fiber("0:1:-1")
    assert source.trinomial == "y - z0*z1" and source.matches_toric
    assert fam.fiber("1:0:-1").trinomial == "x^2 - z0*z1"
    try:
        fam.fiber("1:0:0")
    except ValueError as e:
        assert "OutsideV" in str(e)


def check_polarized_and_presets():
    v = td.PolarizedToricVariety.from_polytope(td.Polyhedron([[1, 0], [0, 1], [-1, -1]]))
    assert v.divisor_class() == "Cartier"
    assert v.phi() == [-1, -1, -1]
    for name in td.PRESETS:
        passed, lines = td.verify_example(name)
        assert passed, (name, lines)


if __name__ == "__main__":
    check_cone_and_polyhedra()
    check_ca1()
    check_invalid_datum()
    check_mutation()
    check_polarized_and_presets()
    print("python smoke test passed")
