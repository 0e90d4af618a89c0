import json

import pytest

from homotopy_calc import api
from homotopy_calc.homotopy import SpaceDescriptor


class TestParsing:
    def test_catalog_group(self):
        g = api.parse_group({"catalog": "SL", "n": 2}, "g")
        assert g.is_reductive and g.root_datum.rank == 1

    def test_product_group(self):
        g = api.parse_group(
            {"catalog": "Product", "factors": [{"catalog": "SL", "n": 2}, {"catalog": "Torus", "n": 1}]},
            "g",
        )
        assert g.root_datum.rank == 2

    def test_inline_root_datum(self):
        g = api.parse_group(
            {"root_datum": {"rank": 1, "roots": [[2], [-2]], "coroots": [[1], [-1]]}}, "g"
        )
        assert g.is_reductive

    def test_invalid_root_datum_positioned(self):
        with pytest.raises(api.InputError) as info:
            api.parse_group(
                {"root_datum": {"rank": 1, "roots": [[1], [-1]], "coroots": [[1], [-1]]}}, "g"
            )
        assert info.value.path == "g.root_datum"

    def test_multiplicative_group(self):
        g = api.parse_group({"multiplicative": {"generators": 1, "relations": [[4]]}}, "h")
        assert g.is_multiplicative

    def test_string_integers_accepted(self):
        big = str(2**80)
        g = api.parse_group({"multiplicative": {"generators": 1, "relations": [[big]]}}, "h")
        assert g.char_lattice.relations.entries[0][0] == 2**80

    def test_unknown_catalog_name(self):
        with pytest.raises(api.InputError):
            api.parse_group({"catalog": "E8"}, "g")

    def test_space_requires_embedding(self):
        with pytest.raises(api.InputError) as info:
            api.parse_space({"g": {"catalog": "SL", "n": 2}, "h": {"catalog": "Torus", "n": 1}})
        assert info.value.path == "embedding"

    def test_catalog_embedding_excludes_explicit_groups(self):
        doc = {
            "g": {"catalog": "SL", "n": 2},
            "embedding": {"catalog_embedding": {"kind": "center_mu", "n": 2}},
        }
        with pytest.raises(api.InputError):
            api.parse_space(doc)

    def test_full_space_document(self):
        doc = {
            "g": {"catalog": "Torus", "n": 2},
            "h": {"catalog": "Torus", "n": 1},
            "embedding": {"cochar_matrix": [[1], [1]]},
        }
        assert isinstance(api.parse_space(doc), SpaceDescriptor)

    def test_inconsistent_connected_flag(self):
        doc = {
            "g": {"catalog": "Torus", "n": 1},
            "h": {"multiplicative": {"generators": 1, "relations": [[3]]}},
            "embedding": {"char_map": [[1]]},
            "flags": {"h_connected": True},
        }
        with pytest.raises(api.InputError) as info:
            api.parse_space(doc)
        assert info.value.path == "flags.h_connected"

    def test_downgrade_flag_honored(self):
        doc = {
            "g": {"catalog": "Torus", "n": 2},
            "h": {"catalog": "Torus", "n": 1},
            "embedding": {"cochar_matrix": [[1], [0]]},
            "flags": {"h_ker_char_connected": False},
        }
        s = api.parse_space(doc)
        assert not s.e.h_ker_char_connected

    def test_complex_document(self):
        doc = {
            "a0": {"generators": 1, "relations": []},
            "a1": {"generators": 1, "relations": [[4]]},
            "alpha": [[1]],
        }
        k = api.parse_complex(doc)
        assert k.a1.relations.entries == ((4,),)

    def test_ill_formed_alpha(self):
        doc = {
            "a0": {"generators": 1, "relations": [[2]]},
            "a1": {"generators": 1, "relations": [[4]]},
            "alpha": [[1]],
        }
        with pytest.raises(api.InputError):
            api.parse_complex(doc)


class TestRunCommand:
    def test_pi1_auto_route(self):
        doc = {"embedding": {"catalog_embedding": {"kind": "center_mu", "n": 2}}}
        out, status = api.run_command("pi1", doc)
        assert status == "ok"
        assert out["method"] == "thm_main"
        assert out["result"] == {"rank": 0, "torsion": [2], "pretty": "Z/2"}

    def test_pi1_gate_failure(self):
        doc = {"embedding": {"catalog_embedding": {"kind": "trivial", "group": {"catalog": "PGL", "n": 3}}}}
        out, status = api.run_command("pi1", doc, method="thm-main")
        assert status == "gate"
        assert out["error"]["code"] == "PicNonTrivial"
        assert "Z/3" in out["error"]["message"]

    def test_pi1_both(self):
        doc = {"embedding": {"catalog_embedding": {"kind": "det_kernel", "n": 2}}}
        out, status = api.run_command("pi1", doc, method="both")
        assert status == "ok" and out["method"] == "both"
        assert out["result"]["pretty"] == "Z"

    def test_invalid_input_status(self):
        out, status = api.run_command("pi1", {"embedding": {}})
        assert status == "invalid"
        assert out["error"]["code"] == "InvalidInput"

    def test_embedding_rejection_status(self):
        doc = {
            "g": {"catalog": "Torus", "n": 1},
            "h": {"catalog": "SL", "n": 2},
            "embedding": {"cochar_matrix": [[1]]},
        }
        out, status = api.run_command("pi2", doc)
        assert status == "invalid"
        assert out["error"]["code"] == "NotAnEmbedding"

    def test_pic_multiplicative_note(self):
        out, status = api.run_command("pic", {"g": {"catalog": "Mu", "n": 5}})
        assert status == "ok"
        assert out["result"]["pretty"] == "0"
        assert "note" in out

    def test_pi1alg_rejects_disconnected(self):
        out, status = api.run_command("pi1alg", {"g": {"catalog": "Mu", "n": 5}})
        assert status == "invalid"

    def test_ext0_routes_and_oracle(self):
        doc = {
            "a0": {"generators": 1, "relations": []},
            "a1": {"generators": 1, "relations": []},
            "alpha": [[6]],
        }
        out, status = api.run_command("ext0", doc, oracle=True)
        assert status == "ok"
        assert out["route"] == "fiber_product"
        assert out["oracle"]["agree"] is True
        assert out["result"]["pretty"] == "Z/6"

    def test_ext0_torsion_degree_zero_uses_resolution(self):
        doc = {
            "a0": {"generators": 1, "relations": [[2]]},
            "a1": {"generators": 1, "relations": [[4]]},
            "alpha": [[2]],
        }
        out, status = api.run_command("ext0", doc)
        assert status == "ok"
        assert out["route"] == "resolution"
        assert out["result"]["pretty"] == "Z/2"

    def test_catalog_list(self):
        out, status = api.run_command("catalog-list", None)
        assert status == "ok"
        assert any(g["name"] == "Spin" for g in out["groups"])

    def test_route_disagreement_maps_to_crosscheck(self, monkeypatch):
        from homotopy_calc.fgab import InvariantFactors
        from homotopy_calc.homotopy import HomotopyResult

        def wrong_route(space):
            return HomotopyResult(InvariantFactors(0, (97,)), "thm_pi2")

        monkeypatch.setattr(api, "pi1_thm_pi2", wrong_route)
        doc = {"embedding": {"catalog_embedding": {"kind": "det_kernel", "n": 2}}}
        out, status = api.run_command("pi1", doc, method="both")
        assert status == "crosscheck"
        assert api.EXIT_CODES[status] == 4
        assert out["error"]["code"] == "CrossCheckDisagreement"


class TestRendering:
    def test_round_trip(self):
        doc = {"embedding": {"catalog_embedding": {"kind": "center_mu", "n": 2}}}
        out, _ = api.run_command("pi1", doc)
        text = api.render_json(out, stable=True)
        parsed = json.loads(text)
        assert parsed == json.loads(api.render_json(parsed, stable=True))

    def test_pretty_regenerates_from_fields(self):
        from homotopy_calc.fgab import InvariantFactors

        doc = {"embedding": {"catalog_embedding": {"kind": "center_mu", "n": 4}}}
        out, _ = api.run_command("pi1", doc)
        inv = InvariantFactors(out["result"]["rank"], tuple(out["result"]["torsion"]))
        assert str(inv) == out["result"]["pretty"]

    def test_big_integers_serialized_as_strings(self):
        big = 2**60
        text = api.render_json({"result": {"torsion": [big], "rank": 0}})
        assert f'"{big}"' in text

    def test_stable_drops_timing(self):
        text = api.render_json({"command": "pi1", "timing_ms": 1.5}, stable=True)
        assert "timing_ms" not in text
