"""Smoke test for the emberlin Python bindings."""
import emberlin

dip4 = emberlin.Graph.generate("dip4")
e = dip4.embed_bieulerian()
assert (e.num_faces, e.euler_genus, e.orientable, e.bi_eulerian) == (2, 2, True, True), e
print(dip4.verify(e.to_text()).splitlines()[-1])

host = emberlin.Graph.generate("fst", 1, 2)
assert host.admissibility() == "obstructed"
nb = host.embed_bieulerian_nonorientable()
assert nb.bi_eulerian and not nb.orientable and nb.euler_genus == 6, nb

ddc4 = emberlin.Graph.generate("ddc", 4)
assert dict(ddc4.orientable_census()) == {4: 14, 6: 2}
one = ddc4.embed_nonorientable_directed(1)
assert (one.num_faces, one.euler_genus, one.orientable) == (1, 5, False), one

g = emberlin.Graph.parse("a x p q\na y q p\n")
assert (g.n, g.m, g.directed) == (2, 2, True)
try:
    emberlin.Graph.parse("e 1 a b\na 2 b a\n")
except ValueError as err:
    assert "line 2" in str(err)
else:
    raise AssertionError("mixed records accepted")
print("smoke test ok")
