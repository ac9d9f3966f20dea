import json
from importlib.resources import files

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entwine.hopf import HopfAlgebra
from entwine.monoidal import BraidingKind, Obj
from entwine.session import Morphism, SessionError, SessionFile, parse_session, parse_session_text, serialize, to_document
from entwine.structures import random_structure
from support import F2, Q, lin

SAMPLE = files("entwine") / "samples" / "f2c2.json"


def doc(**over):
    base = {"field": "Q", "braiding": "trivial", "objects": {}, "morphisms": {}, "structures": {}}
    base.update(over)
    return json.dumps(base)


def error_of(text) -> SessionError:
    with pytest.raises(SessionError) as info:
        parse_session_text(text)
    return info.value


def test_sample_parses():
    s = parse_session(SAMPLE)
    assert s.field == F2 and s.braiding is BraidingKind.TRIVIAL
    assert s.objects["H"] == Obj.of(2)
    assert isinstance(s.structure("H", "hopf").value, HopfAlgebra)
    # hopf structures stand in for their algebra where one is expected
    assert s.structure("H_regular").value.over == s.structure("H").value.bialg


def test_sample_round_trips():
    text = SAMPLE.read_text(encoding="utf-8")
    s = parse_session_text(text)
    once = serialize(s)
    assert once == text
    again = parse_session_text(once)
    assert serialize(again) == once
    assert to_document(again) == to_document(s)


def test_empty_structures_valid():
    s = parse_session_text(doc())
    assert s.structures == {} and s.objects == {}
    assert parse_session_text('{"field": "F3"}').field.characteristic == 3


def test_dangling_morphism_named():
    text = doc(
        objects={"A": [1, 0]},
        morphisms={"e": {"dom": "I", "cod": "A", "rows": [["1"]]}},
        structures={"alg": {"kind": "algebra", "unit": "e", "mult": "nope"}},
    )
    err = error_of(text)
    assert "nope" in str(err)
    assert err.path == "structures.alg.mult"


def test_dangling_structure_and_cycles():
    err = error_of(doc(structures={"m": {"kind": "module", "action": "x", "over": "ghost"}}))
    assert err.path == "structures.m.action" and "'x'" in str(err)
    cyc = {
        "a": {"kind": "grouplike", "coalgebra": "b", "vector": "v"},
        "b": {"kind": "grouplike", "coalgebra": "a", "vector": "v"},
    }
    objs = {"C": [1, 0]}
    morph = {"v": {"dom": "I", "cod": "C", "rows": [["1"]]}}
    err = error_of(doc(objects=objs, morphisms=morph, structures=cyc))
    assert "circular" in str(err)


@pytest.mark.parametrize(
    "morphism,path",
    [
        ({"dom": "A", "cod": "A", "rows": [["1", "0"]]}, "morphisms.f.rows"),
        ({"dom": "A", "cod": "A", "rows": [["1"], ["0"]]}, "morphisms.f.rows[0]"),
        ({"dom": "A", "cod": "A", "rows": [["1", "x"], ["0", "1"]]}, "morphisms.f.rows[0][1]"),
        ({"dom": "A", "cod": "A", "rows": [["1", 0.5], ["0", "1"]]}, "morphisms.f.rows[0][1]"),
        ({"dom": "B", "cod": "A", "rows": [["1"], ["0"]]}, "morphisms.f.dom"),
        ({"dom": "A", "cod": "A"}, "morphisms.f"),
    ],
)
def test_positioned_matrix_errors(morphism, path):
    err = error_of(doc(objects={"A": [2, 0]}, morphisms={"f": morphism}))
    assert err.path == path


def test_degree_mixing_rejected():
    err = error_of(doc(objects={"A": [1, 1]}, morphisms={"f": {"dom": "A", "cod": "A", "rows": [["0", "1"], ["0", "0"]]}}))
    assert err.path == "morphisms.f"


def test_syntax_error_has_line_and_column():
    err = error_of('{\n  "field": "F2",\n  "objects": {,}\n}')
    assert err.line == 3 and err.column is not None
    assert "line 3" in str(err)


def test_bad_field_and_braiding():
    assert error_of(doc(field="F4")).path == "field"
    assert error_of(doc(braiding="twisted")).path == "braiding"
    assert error_of(doc(extra=1)).path == "extra"


def test_kind_mismatch_reported():
    s = parse_session(SAMPLE)
    with pytest.raises(SessionError):
        s.structure("H_alg", "coalgebra")
    with pytest.raises(SessionError):
        s.structure("missing")
    text = SAMPLE.read_text(encoding="utf-8")
    d = json.loads(text)
    d["structures"]["regular"]["algebra"] = "H_coalg"
    err = error_of(json.dumps(d))
    assert err.path == "structures.regular.algebra"


def test_entries_reduced_mod_p_and_fractions():
    text = doc(field="F3", objects={"A": [1, 0]}, morphisms={"f": {"dom": "A", "cod": "A", "rows": [["5"]]}})
    assert parse_session_text(text).morphisms["f"].map.mat[0, 0] == 2
    text = doc(objects={"A": [1, 0]}, morphisms={"f": {"dom": "A", "cod": "A", "rows": [["-6/4"]]}})
    s = parse_session_text(text)
    assert '"-3/2"' in serialize(s)


def test_explicit_degree_objects():
    text = doc(objects={"V": {"degrees": [1, 0]}})
    s = parse_session_text(text)
    assert s.objects["V"] == Obj((1, 0))
    assert serialize(parse_session_text(serialize(s))) == serialize(s)
    assert error_of(doc(objects={"V": {"degrees": [2]}})).path == "objects.V.degrees"


@given(st.sampled_from([(1, 0), (2, 0), (1, 1), (2, 1)]), st.integers(0, 10**6))
def test_random_structures_round_trip(dims, seed):
    from entwine.linalg import FieldSpec

    k = FieldSpec.prime(3)
    a = random_structure("algebra", dims, k, seed)
    s = SessionFile(k, BraidingKind.SUPER)
    s.objects["A"] = a.carrier
    s.morphisms["unit"] = Morphism((), ("A",), a.unit)
    s.morphisms["mult"] = Morphism(("A", "A"), ("A",), a.mult)
    text = serialize(s)
    t = parse_session_text(text)
    assert t.morphisms["mult"].map == a.mult
    assert serialize(t) == text


def test_fraction_entries_round_trip():
    s = SessionFile(Q, BraidingKind.TRIVIAL)
    s.objects["A"] = Obj.of(2)
    s.morphisms["f"] = Morphism(("A",), ("A",), lin(Obj.of(2), Obj.of(2), Q, [["1/3", "-2"], [0, "7/5"]]))
    t = parse_session_text(serialize(s))
    assert t.morphisms["f"].map == s.morphisms["f"].map
