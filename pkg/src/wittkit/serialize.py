"""JSON codecs for the form types and reports.

Emission is deterministic: association keys are sorted, matrices are
row-major, and rationals are "num/den" strings (bare numerator when the
denominator is 1).  Every document emitted for a form type re-parses into
an equal value through the matching from_json function.
"""

from __future__ import annotations

import json
from fractions import Fraction

from wittkit.errors import NotAKnotForm
from wittkit.exact.laurent import LaurentPoly
from wittkit.exact.matrix import Matrix
from wittkit.exact.ratfunc import RatFunc
from wittkit.finite import FiniteLinkingForm
from wittkit.knots import KnotInput, ObstructionReport
from wittkit.laurent_forms import (
    DWMultiSignatureLaurent,
    LaurentLinkingForm,
    decompose_module,
)
from wittkit.seifert import SeifertForm, SeifertSubmodule


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def fraction_str(x) -> str:
    return str(Fraction(x))


def _scalar(x):
    """int when integral, "num/den" string otherwise."""
    f = Fraction(x)
    return int(f) if f.denominator == 1 else str(f)


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not rational scalars")
    if isinstance(s, float):
        raise ValueError("floats are not exact; pass 'num/den' strings")
    return Fraction(s)


# -- Laurent polynomials and rational functions --

def laurent_to_json(p: LaurentPoly) -> dict:
    return {str(d): fraction_str(c) for d, c in sorted(p.coeffs.items())}


def laurent_from_json(obj) -> LaurentPoly:
    if not isinstance(obj, dict):
        raise ValueError("a Laurent polynomial is a {degree: coefficient} "
                         "object")
    return LaurentPoly({int(d): parse_fraction(c) for d, c in obj.items()})


def ratfunc_to_json(f: RatFunc) -> dict:
    return {
        "num": laurent_to_json(f.num),
        "den": laurent_to_json(LaurentPoly.from_dense(f.den)),
    }


def ratfunc_from_json(obj) -> RatFunc:
    return RatFunc.make(laurent_from_json(obj["num"]),
                        laurent_from_json(obj["den"]))


def _matrix_json(m: Matrix, cell) -> list:
    return [[cell(m[i, j]) for j in range(m.ncols)] for i in range(m.nrows)]


def _rows_from_json(rows, cell) -> list:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValueError("a matrix is a row-major array of arrays")
    return [[cell(x) for x in row] for row in rows]


# -- finite linking forms --

def finite_form_to_json(form: FiniteLinkingForm) -> dict:
    return {
        "prime": form.prime,
        "orders": list(form.orders),
        "gram": [[fraction_str(x) for x in row] for row in form.gram],
        "epsilon": form.epsilon,
    }


def finite_form_from_json(obj) -> FiniteLinkingForm:
    return FiniteLinkingForm(
        int(obj["prime"]),
        [int(l) for l in obj["orders"]],
        _rows_from_json(obj["gram"], parse_fraction),
        int(obj["epsilon"]),
    )


def oracle_result_to_json(result: dict) -> dict:
    return {
        "mode": result["mode"],
        "witnesses": [[[int(x) for x in row] for row in w]
                      for w in result["witnesses"]],
        "exhausted": bool(result["exhausted"]),
    }


# -- Laurent linking forms --

def laurent_form_to_json(form: LaurentLinkingForm) -> dict:
    pres = form.module.presentation
    return {
        "presentation": _matrix_json(pres, laurent_to_json),
        "pairing": _matrix_json(form.pairing, ratfunc_to_json),
        "epsilon": form.epsilon,
        "torsion": form.module.torsion_mode,
    }


def laurent_form_from_json(obj) -> LaurentLinkingForm:
    module = decompose_module(
        _rows_from_json(obj["presentation"], laurent_from_json),
        obj["torsion"],
    )
    return LaurentLinkingForm(
        module,
        _rows_from_json(obj["pairing"], ratfunc_from_json),
        int(obj["epsilon"]),
    )


# -- Seifert data --

def seifert_to_json(form: SeifertForm) -> dict:
    return {
        "psi": _matrix_json(form.psi, _scalar),
        "epsilon": form.epsilon,
        "coefficients": form.coefficients,
    }


def seifert_from_json(obj) -> SeifertForm:
    return SeifertForm(
        _rows_from_json(obj["psi"], parse_fraction),
        int(obj["epsilon"]),
        obj.get("coefficients", "Z"),
    )


def submodule_to_json(sub: SeifertSubmodule) -> dict:
    return {"basis": _matrix_json(sub.basis, _scalar)}


# -- knots and reports --

def knot_to_json(k: KnotInput) -> dict:
    doc = {
        "name": k.name,
        "psi": _matrix_json(k.psi, _scalar),
        "epsilon": k.epsilon,
    }
    if k.dimension_hint is not None:
        doc["dimension_hint"] = k.dimension_hint
    return doc


def knot_from_json(obj) -> KnotInput:
    if not isinstance(obj, dict) or "psi" not in obj or "epsilon" not in obj:
        raise NotAKnotForm("a knot document needs 'psi' and 'epsilon'")
    hint = obj.get("dimension_hint")
    return KnotInput(
        obj.get("name", "knot"),
        _rows_from_json(obj["psi"], parse_fraction),
        int(obj["epsilon"]),
        None if hint is None else int(hint),
    )


def multisignature_to_json(ms: DWMultiSignatureLaurent) -> list:
    out = []
    for (pk, ridx, level), signature in ms.entries():
        root = ms.theta(pk, ridx)
        lo, hi = root.theta_interval()
        out.append({
            "factor": laurent_to_json(LaurentPoly.from_dense(list(pk))),
            "theta": {"interval": [lo, hi], "approx": (lo + hi) / 2},
            "level": level,
            "signature": signature,
        })
    return out


def multisignature_notes(ms: DWMultiSignatureLaurent) -> list:
    """Rank-only and conjugate-pair bookkeeping as report notes: those
    levels carry no real signature but should stay visible."""
    notes = []
    for (pk, level), rank in sorted(ms.rank_only.items()):
        poly = LaurentPoly.from_dense(list(pk))
        notes.append(
            f"level {level} at factor {poly!r} is skew over a real residue "
            f"field: rank {rank}, no signature")
    for pa, pb in sorted(ms.conjugate_pairs):
        qa = LaurentPoly.from_dense(list(pa))
        qb = LaurentPoly.from_dense(list(pb))
        notes.append(
            f"factors {qa!r} and {qb!r} are conjugate partners and "
            "contribute hyperbolically")
    return notes


def report_to_json(report: ObstructionReport) -> dict:
    witnesses = None
    if report.witnesses is not None:
        witnesses = [submodule_to_json(sub) for sub in report.witnesses]
    return {
        "name": report.name,
        "alexander": laurent_to_json(report.alexander),
        "factorization": [
            {"factor": laurent_to_json(p), "multiplicity": mult}
            for p, mult in report.factorization
        ],
        "multisignature": multisignature_to_json(report.multisignature),
        "slice_obstructed": report.slice_obstructed,
        "doubly_slice_obstructed": report.doubly_slice_obstructed,
        "rochlin": report.rochlin,
        "witnesses": witnesses,
        "notes": list(report.notes) + multisignature_notes(
            report.multisignature),
        "convention": {
            "sigma_sign": report.convention["sigma_sign"],
            "precision": fraction_str(report.convention["precision"]),
        },
    }
