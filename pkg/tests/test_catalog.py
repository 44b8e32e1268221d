import pytest

from genuscenter import catalog, fusion
from genuscenter.errors import GenusCenterError, KeyNotFoundError, PremodularRequiredError
from genuscenter.exactnum import rational


class TestBuiltin:
    def test_keys(self):
        assert catalog.catalog_keys() == [
            "fibonacci", "ising", "rep_s3", "rep_z2", "semion", "vec_z2", "vec_z3_q",
        ]

    def test_unknown_key_lists_available(self):
        with pytest.raises(KeyNotFoundError) as err:
            catalog.builtin("nope")
        assert "fibonacci" in str(err.value)

    def test_rep_z2_shape(self):
        spec = catalog.builtin("rep_z2")
        omega, _ = fusion.quantum_dims(spec)
        assert len(spec.labels) == 2
        assert all(v == rational(1) for v in omega.weights.values())
        _s, transparent, _m = fusion.s_matrix_and_transparency(spec)
        assert transparent == set(spec.labels)

    def test_rep_s3_fusion_pattern(self):
        spec = catalog.builtin("rep_s3")
        assert spec.N("V", "V", "1") == 1
        assert spec.N("V", "V", "e") == 1
        assert spec.N("V", "V", "V") == 1
        assert spec.N("e", "e", "1") == 1
        # rational 6j-symbols by construction
        for block in spec.F.values():
            for v in block.values():
                assert v.order == 1

    def test_symmetric_flags(self):
        for key in ("rep_z2", "rep_s3", "vec_z2"):
            spec = catalog.builtin(key)
            _s, transparent, modular = fusion.s_matrix_and_transparency(spec)
            assert transparent == set(spec.labels) and not modular
        for key in ("fibonacci", "ising", "semion", "vec_z3_q"):
            spec = catalog.builtin(key)
            _s, transparent, modular = fusion.s_matrix_and_transparency(spec)
            assert transparent == {spec.unit} and modular


class TestRoundTrip:
    @pytest.mark.parametrize("key", catalog.catalog_keys())
    def test_save_load_identity(self, key, tmp_path):
        spec = catalog.builtin(key)
        path = tmp_path / f"{key}.json"
        catalog.save_spec(spec, path)
        loaded = catalog.load_spec(path)
        assert loaded.labels == spec.labels
        assert loaded.unit == spec.unit
        assert loaded.dual == spec.dual
        assert loaded.fusion == spec.fusion
        assert set(loaded.F) == set(spec.F)
        for k in spec.F:
            assert set(loaded.F[k]) == set(spec.F[k])
            for idx in spec.F[k]:
                assert loaded.F[k][idx] == spec.F[k][idx]
        assert (loaded.R is None) == (spec.R is None)
        if spec.R is not None:
            assert set(loaded.R) == set(spec.R)
            for k in spec.R:
                for idx in spec.R[k]:
                    assert loaded.R[k][idx] == spec.R[k][idx]
        for a in spec.labels:
            assert loaded.pivotal_coeff(a) == spec.pivotal_coeff(a)

    def test_zero_order_scalar_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"name": "x", "labels": ["0"], "unit": "0", "dual": {"0": "0"},'
            ' "fusion": [["0","0","0",1]],'
            ' "F": [{"labels": ["0","0","0","0"], "row": ["0",0,0],'
            ' "col": ["0",0,0], "value": {"order": 0, "terms": []}}],'
            ' "pivotal": {}}'
        )
        with pytest.raises(GenusCenterError) as err:
            catalog.load_spec(path)
        assert "order" in str(err.value)

    def test_missing_field_diagnostic(self, tmp_path):
        path = tmp_path / "missing.json"
        path.write_text('{"name": "x", "labels": ["0"]}')
        with pytest.raises(GenusCenterError) as err:
            catalog.load_spec(path)
        assert "missing mandatory field" in str(err.value)

    def test_non_involutive_dual_rejected(self, tmp_path):
        path = tmp_path / "dual.json"
        path.write_text(
            '{"name": "x", "labels": ["0", "1"], "unit": "0",'
            ' "dual": {"0": "0", "1": "0"}, "fusion": [], "F": [], "pivotal": {}}'
        )
        with pytest.raises(GenusCenterError) as err:
            catalog.load_spec(path)
        assert "involutive" in str(err.value)

    def test_spherical_only_spec_gates_center_ops(self, tmp_path):
        spec = catalog.builtin("rep_z2")
        path = tmp_path / "noR.json"
        catalog.save_spec(
            fusion.CategorySpec(
                name="noR",
                labels=spec.labels,
                unit=spec.unit,
                dual=spec.dual,
                fusion=spec.fusion,
                F=spec.F,
                R=None,
                pivotal=spec.pivotal,
            ),
            path,
        )
        loaded = catalog.load_spec(path)
        assert loaded.R is None
        from genuscenter import center
        from genuscenter.gluing import parse_cycles

        with pytest.raises(PremodularRequiredError):
            center.tube_algebra(loaded, parse_cycles("(1 2)"))

    def test_loading_does_not_validate(self, tmp_path):
        # A structurally wrong file loads fine; validation is explicit.
        path = tmp_path / "notvalid.json"
        path.write_text(
            '{"name": "x", "labels": ["0", "1"], "unit": "0",'
            ' "dual": {"0": "0", "1": "1"}, "fusion": [["0","0","0",1]],'
            ' "F": [], "pivotal": {}}'
        )
        loaded = catalog.load_spec(path)
        assert not fusion.validate_structure(loaded).ok
