"""Structure files: round trips, strict parsing, and error reporting."""

import json

import pytest

from rotabaxter import fileformat as ff
from rotabaxter.classification import (
    build_extension, canonical_section, check_abelian_extension,
    check_ainfty_bimodule, check_homotopy_rrb_operator,
    check_two_term_ainfty, extract_cocycle, skeletal_to_triple,
    triple_to_skeletal,
)
from rotabaxter.samples import random_rrb_cocycle, random_rrb_pair


def rrb_document(seed=2, degree=2, cocycle_seed=0):
    x, b = random_rrb_pair(seed=seed)
    c = random_rrb_cocycle(cocycle_seed, x, b, degree)
    assert c is not None
    doc = ff.new_document()
    xn, asp, msp = ff.declare_rrb_algebra(doc, "X", x)
    bn, bsp, fsp = ff.declare_rrb_bimodule(doc, "B", b, xn, asp, msp)
    ff.declare_cocycle(doc, "c", c, xn, bn, asp, msp, bsp, fsp)
    return doc, x, b, c


def reject(doc, fragment):
    with pytest.raises(ff.ParseError) as err:
        ff.parse_document(doc)
    assert fragment in str(err.value), str(err.value)


# ------------------------------------------------------------ round trips


def test_rrb_pair_round_trip():
    doc, x, b, c = rrb_document()
    text = ff.dump_document(doc)
    sf = ff.parse_text(text)
    x2, b2, c2 = (sf.by_name[n].obj for n in ("X", "B", "c"))
    assert x2.algebra.mu.data == x.algebra.mu.data
    assert x2.module.left.data == x.module.left.data
    assert x2.module.right.data == x.module.right.data
    assert x2.rop == x.rop
    assert b2.sop == b.sop
    assert b2.left_pair.data == b.left_pair.data
    assert b2.right_pair.data == b.right_pair.data
    assert c2 == c
    # re-serializing the parsed objects reproduces the bytes
    doc2 = ff.new_document()
    ff.declare_rrb_algebra(doc2, "X", x2)
    ff.declare_rrb_bimodule(doc2, "B", b2, "X", "X.algebra.space",
                            "X.module.space")
    ff.declare_cocycle(doc2, "c", c2, "X", "B", "X.algebra.space",
                       "X.module.space", "B.base.space", "B.fiber.space")
    assert ff.dump_document(doc2) == text


def test_extension_round_trip_with_section():
    doc, x, b, c = rrb_document()
    e = build_extension(x, b, c)
    sec = canonical_section(e)
    out = ff.new_document()
    ff.declare_extension(out, "E", e, sections={"split": sec})
    sf = ff.parse_text(ff.dump_document(out))
    d = sf.by_name["E"]
    assert check_abelian_extension(d.obj).ok
    sec2 = d.refs["sections"]["split"].validate(d.obj)
    assert extract_cocycle(d.obj, sec2) == c


def test_skeletal_round_trip():
    x, b = random_rrb_pair(seed=2)
    c = random_rrb_cocycle(1, x, b, 3)
    assert c is not None
    a, m, r = triple_to_skeletal(x, b, c)
    doc = ff.new_document()
    an, a0, a1 = ff.declare_two_term(doc, "A2", a)
    mn, m0, m1 = ff.declare_ainfty_bimodule(doc, "M2", m, an, a0, a1)
    ff.declare_homotopy_rrb(doc, "T", r, an, mn, a0, a1, m0, m1)
    sf = ff.parse_text(ff.dump_document(doc))
    a2, m2, r2 = (sf.by_name[n].obj for n in ("A2", "M2", "T"))
    assert check_two_term_ainfty(a2).ok
    assert check_ainfty_bimodule(a2, m2).ok
    assert check_homotopy_rrb_operator(a2, m2, r2).ok
    x2, b2, c2 = skeletal_to_triple(a2, m2, r2)
    assert c2 == c
    assert x2.rop == x.rop
    assert b2.sop == b.sop


def test_dump_is_deterministic():
    doc, _, _, _ = rrb_document()
    assert ff.dump_document(doc) == ff.dump_document(doc)


def test_path_round_trip(tmp_path):
    doc, x, _, _ = rrb_document()
    path = tmp_path / "pair.json"
    ff.write_path(doc, path)
    sf = ff.parse_path(path)
    assert sf.by_name["X"].obj.rop == x.rop


def test_integer_scalars_accepted():
    doc = ff.new_document()
    ff.add_space(doc, "V", 1)
    doc["bilinear"]["mul"] = {"from": ["V", "V"], "to": "V",
                              "tensor": [[[1]]]}
    doc["declare"].append({"type": "assoc_algebra", "name": "A",
                           "space": "V", "product": "mul"})
    sf = ff.parse_document(doc)
    assert sf.by_name["A"].obj.mu.data[0][0] == (1,)


# ------------------------------------------------------------ parse errors


def test_field_must_be_q():
    reject({"field": "R", "spaces": {}, "declare": []}, 'must be "Q"')


def test_unknown_top_level_key():
    reject({"field": "Q", "tables": {}}, "unknown keys")


def test_bad_dimension():
    reject({"field": "Q", "spaces": {"V": {"dim": -1}}},
           "spaces.V.dim")


def test_basis_names_length():
    reject({"field": "Q", "spaces": {"V": {"dim": 2,
                                           "basis_names": ["x"]}}},
           "spaces.V.basis_names: needs 2 strings")


def test_bilinear_needs_two_factors():
    doc = {"field": "Q", "spaces": {"V": {"dim": 1}},
           "bilinear": {"m": {"from": ["V"], "to": "V", "tensor": [[[0]]]}}}
    reject(doc, "bilinear.m.from")


def test_unresolved_space_name():
    doc = {"field": "Q", "spaces": {"V": {"dim": 1}},
           "linear": {"f": {"from": "W", "to": "V", "matrix": [[0]]}}}
    reject(doc, "unresolved space 'W'")


def test_tensor_shape_names_the_key():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["bilinear"]["B.l"]["tensor"][0] = doc["bilinear"]["B.l"]["tensor"][0][:1]
    reject(doc, "bilinear.B.l.tensor[0]")


def test_malformed_rational():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["linear"]["X.R"]["matrix"][0][0] = "2/4x"
    reject(doc, "malformed rational '2/4x'")


def test_zero_denominator():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["linear"]["X.R"]["matrix"][0][0] = "1/0"
    reject(doc, "zero denominator")


def test_matrix_row_count():
    doc = {"field": "Q", "spaces": {"V": {"dim": 2}},
           "linear": {"f": {"from": "V", "to": "V", "matrix": [[0, 0]]}}}
    reject(doc, "linear.f.matrix: needs 2 rows")


def test_unknown_declaration_type():
    doc = {"field": "Q", "declare": [{"type": "group", "name": "G"}]}
    reject(doc, "unknown type 'group'")


def test_duplicate_declaration_name():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["declare"].append(dict(doc["declare"][0]))
    reject(doc, "duplicate declaration name")


def test_unresolved_declaration_reference():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["declare"][2]["module"] = "nope"
    reject(doc, "unresolved declaration 'nope'")


def test_wrong_kind_reference():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["declare"][2]["module"] = "X.algebra"
    reject(doc, "is a assoc_algebra, expected bimodule")


def test_forward_reference_rejected():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["declare"].reverse()
    reject(doc, "unresolved declaration")


def test_unknown_field_in_declaration():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["declare"][0]["extra"] = 1
    reject(doc, "unknown fields ['extra']")


def test_shape_mismatch_from_constructor():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    # S declared fiber -> base; pointing the rrb operator at it breaks shapes
    doc["declare"][2]["operator"] = "B.S"
    reject(doc, "shape mismatch")


def test_cocycle_degree_one_rejects_gamma():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    entry = doc["declare"][-1]
    entry["degree"] = 1
    entry["beta"] = entry["beta"][:1]
    reject(doc, "degree 1 has no gamma")


def test_cocycle_needs_gamma_at_degree_two():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    del doc["declare"][-1]["gamma"]
    reject(doc, "needs a gamma map")


def test_cocycle_beta_count():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    doc["declare"][-1]["beta"] = doc["declare"][-1]["beta"][:1]
    reject(doc, "needs 2 linear names")


def test_bimodule_over_wrong_algebra():
    doc, _, _, _ = rrb_document()
    doc = json.loads(ff.dump_document(doc))
    # a second copy of the algebra is a different declaration, so pointing
    # the coefficient base at a bimodule over the copy must be rejected
    idx = next(i for i, d in enumerate(doc["declare"]) if d["name"] == "X")
    doc["declare"].insert(idx, {
        "type": "assoc_algebra", "name": "A2",
        "space": "X.algebra.space", "product": "X.algebra.mul"})
    doc["declare"].insert(idx + 1, {
        "type": "bimodule", "name": "B2.base", "algebra": "A2",
        "space": "B.base.space", "left": "B.base.left",
        "right": "B.base.right"})
    for entry in doc["declare"]:
        if entry.get("type") == "rrb_bimodule":
            entry["base"] = "B2.base"
    reject(doc, "is not over the algebra")


def test_homotopy_layer_mismatch():
    x, b = random_rrb_pair(seed=2)
    c = random_rrb_cocycle(1, x, b, 3)
    a, m, r = triple_to_skeletal(x, b, c)
    doc = ff.new_document()
    an, a0, a1 = ff.declare_two_term(doc, "A2", a)
    mn, m0, m1 = ff.declare_ainfty_bimodule(doc, "M2", m, an, a0, a1)
    ff.declare_homotopy_rrb(doc, "T", r, an, mn, a0, a1, m0, m1)
    doc = json.loads(ff.dump_document(doc))
    doc["declare"][-1]["r0"] = "T.r1"
    reject(doc, "operator layers")
