import json
import os

import pytest

import cuntzwave as cw

from conftest import DATA

CASES = [
    ["construct", "--bank", "bank_haar.json"],
    ["check-cn", "haar.json"],
    ["check-cn", "identity.json"],
    ["check-cn", "leech_row.json", "--nonsquare"],
    ["decompose", "haar.json", "--P", "P_I2.json", "--J", "J_I2.json"],
    ["decompose", "haar.json", "--P", "P_swap2.json"],
    ["factor", "haar.json"],
    ["factor", "identity.json"],
    ["periodic-map", "periodic_haar.json"],
    ["symmetry-T", "haar_realization.json", "--N", "2"],
    ["stein", "blaschke_half.json", "--J", "scalar1.json"],
    ["stein", "inv_blaschke_half.json", "--J", "scalar1.json"],
    ["junitary", "haar.json", "--J", "J_I2.json"],
    ["negsq", "--theta", "inv_z.json", "--J", "scalar1.json", "--trials", "10", "--timing"],
    ["negsq", "--spec", "spec_inv_z.json", "--grid", "grid_small.json"],
    ["positivity", "positivity_zN.json"],
    ["cuntz-verify", "--N", "3", "--degree", "7"],
    ["gleason", "gleason_f.json", "--m", "gleason_m2.json", "--degree", "5"],
    ["eigensweep", "spec_hardy.json", "--trials", "2", "--max-points", "4"],
    ["check-cn", "corrupted.json"],
    ["bogus"],
]


def resolve(args):
    return [str(DATA / a) if a.endswith(".json") else a for a in args]


def report_of(code, out, err):
    text = out if out.startswith("{") else err
    return json.loads(text)


@pytest.mark.parametrize("args", CASES, ids=lambda a: "_".join(a[:2]))
def test_report_validates(args, validator):
    code, out, err = cw.run_cli(resolve(args))
    assert code in (0, 1, 2)
    report = report_of(code, out, err)
    validator("report.schema.json").validate(report)
    if code == 1:
        assert "verdict" not in report
    else:
        assert report["verdict"] is (code == 0)


def test_eigensweep_with_out_validates(tmp_path, validator):
    path = tmp_path / "sweep.csv"
    code, out, _ = cw.run_cli(resolve(["eigensweep", "spec_inv_z.json", "--out", str(path),
                                       "--trials", "2", "--max-points", "3"]))
    assert code == 0
    report = json.loads(out)
    validator("report.schema.json").validate(report)
    assert report["csv"] == str(path)
    assert path.read_text().splitlines()[0] == "trial,grid_size,min_eigenvalue,n_neg"


def test_schema_rejects_missing_body(validator):
    code, out, err = cw.run_cli(resolve(["check-cn", "haar.json"]))
    report = report_of(code, out, err)
    del report["deviation"]
    assert not validator("report.schema.json").is_valid(report)


DATA_FILES = {
    "laurent.schema.json": ["haar.json", "identity.json", "inv_z.json", "leech_row.json",
                            "periodic_haar.json", "gleason_f.json"],
    "realization.schema.json": ["blaschke_half.json", "inv_blaschke_half.json",
                                "haar_realization.json"],
    "signature.schema.json": ["J_1_m1.json", "J_I2.json", "scalar1.json"],
    "filterbank.schema.json": ["bank_haar.json"],
    "pmatrix.schema.json": ["P_I2.json", "P_swap2.json"],
    "grid.schema.json": ["grid_small.json"],
    "kernelspec.schema.json": ["spec_hardy.json", "spec_inv_z.json", "spec_schur_blaschke.json"],
    "positivity_config.schema.json": ["positivity_zN.json"],
}


@pytest.mark.parametrize("schema,name",
                         [(s, n) for s, names in DATA_FILES.items() for n in names])
def test_input_files_validate(schema, name, data, validator):
    validator(schema).validate(data(name))


def test_round_trip_outputs_validate(data, validator):
    W = cw.build_filter(data("bank_haar.json"))
    validator("laurent.schema.json").validate(W)
    validator("filterbank.schema.json").validate(cw.check_cn(W)["bank"])
    assert not validator("laurent.schema.json").is_valid({"rows": 1, "cols": 1})


def test_schemas_are_well_formed():
    import jsonschema
    from conftest import SCHEMAS

    names = sorted(os.listdir(SCHEMAS))
    assert "report.schema.json" in names
    for n in names:
        jsonschema.Draft202012Validator.check_schema(json.loads((SCHEMAS / n).read_text()))
