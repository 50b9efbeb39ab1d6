"""Smoke test for the normlab_py extension.

Build and install first:

    cd crates/py && maturin build --release -o dist && pip install dist/*.whl
    python python/smoke_test.py
"""

import json
import math
import pathlib
import sys

import normlab_py as nl

SCHEMA_DIR = pathlib.Path(__file__).resolve().parent.parent / "schema"


def validator(definition):
    try:
        import jsonschema
    except ImportError:
        return None
    schema = json.loads((SCHEMA_DIR / "reports.schema.json").read_text())
    sub = {"$defs": schema["$defs"], "$ref": f"#/$defs/{definition}"}
    return jsonschema.Draft202012Validator(sub)


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    return ok


def main():
    results = []

    octagon = nl.regular_polygon(4)
    e, s, r = octagon.constants()
    results.append(check("octagon E", abs(e - 2 * math.tan(math.pi / 8)) < 1e-9, f"E={e}"))
    results.append(check("S equals R", s == r))

    hexagon = nl.Space({"type": "example_3_1", "delta": 1.0})
    rep = hexagon.smoothness([0.0, 2.0])
    results.append(check("sharp apex eps", abs(rep.eps - 1.0) < 1e-12 and rep.is_approx_smooth and not rep.is_smooth))
    results.append(check("sharp apex face", len(rep.face) == 2))

    square = nl.Space('{"type":"lp","p":"inf","dim":2}')
    plus, minus = square.rho([1.0, 1.0], [1.0, 0.0])
    results.append(check("corner derivatives", (plus, minus) == (1.0, 0.0)))
    results.append(check("difference quotient", abs(square.rho_numeric([1.0, 1.0], [1.0, 0.0], 1e-6) - plus) < 1e-5))
    results.append(check("bj at the corner", square.is_bj([1.0, 1.0], [1.0, -1.0])))

    add = octagon.additivity([1.0, 0.0], [0.0, 1.0], [0.0, 2.0])
    results.append(check("additivity verdicts", "fail" not in (add.window, add.orthogonal_pair, add.half_eps)))

    euclid = nl.Space({"type": "lp", "p": 2.0, "dim": 3})
    results.append(check("euclidean norm", euclid.norm([3.0, 4.0, 12.0]) == 13.0))
    results.append(check("eps_min", abs(euclid.eps_min([1.0, 0.0, 0.0], [1.0, 1.0, 0.0]) - math.sqrt(0.5)) < 1e-12))
    try:
        euclid.constants()
        results.append(check("capability error", False))
    except nl.CapabilityError:
        results.append(check("capability error", True))
    try:
        nl.Space({"type": "regular_polygon"})
        results.append(check("input error", False))
    except ValueError:
        results.append(check("input error", True))

    suite = json.loads(nl.run_suite("sharp_hexagon"))
    results.append(check("suite run", suite["failures"] == [] and suite["trials"] > 0))

    for definition, report in [
        ("smoothness", json.loads(rep.to_json())),
        ("orthogonality", json.loads(square.orthogonality([1.0, 1.0], [1.0, -1.0]).to_json())),
        ("additivity", json.loads(add.to_json())),
        ("suite_results", [suite]),
    ]:
        v = validator(definition)
        if v is None:
            print(f"skip schema {definition} (jsonschema not installed)")
            continue
        errors = list(v.iter_errors(report))
        results.append(check(f"schema {definition}", not errors, "; ".join(e.message for e in errors)))

    try:
        import jsonschema

        spec_schema = json.loads((SCHEMA_DIR / "space_spec.schema.json").read_text())
        v = jsonschema.Draft202012Validator(spec_schema)
        good = {"type": "direct_sum", "p": "inf", "left": {"type": "regular_polygon", "n": 3}, "right": {"type": "lp", "p": 2.0, "dim": 1}}
        results.append(check("spec schema accepts", v.is_valid(good) and nl.Space(good).dim == 3))
        results.append(check("spec schema rejects", not v.is_valid({"type": "lp", "p": 0.5, "dim": 2})))
    except ImportError:
        print("skip spec schema (jsonschema not installed)")

    passed = sum(results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
