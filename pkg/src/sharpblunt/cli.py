"""Command-line front end: classification queries and the verification harness.

Output is deterministic: fixed field order, canonical sorting, and no
wall-clock content in reports (timings go to stderr).  Integers that do
not fit in 53 bits are emitted as strings in JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from math import gcd

from . import corresp, fungroup, rootdata, sharpfin, triples
from .rootdata import FiniteType

SCHEMA_VERSION = "sharpblunt/v1"
MAX_SAFE_INT = (1 << 53) - 1
DEFAULT_MAX_RANK = 64

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

_RANK_VALIDITY = {"A": 1, "B": 2, "C": 2, "D": 4, "E": (6, 8), "F": (4, 4), "G": (2, 2)}


class UsageError(Exception):
    pass


def _json_safe(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > MAX_SAFE_INT else x
    if isinstance(x, float):
        raise AssertionError("no floating point belongs in the output")
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return str(x)


def _parse_types(args):
    fam_rank = []
    t = args.type
    if t is None:
        raise UsageError("--type is required")
    text = t.strip()
    if len(text) > 1 and text[1:].lstrip("_").lstrip("-").isdigit():
        ft = FiniteType.parse(text)
        fam_rank.append((ft.family, [ft.rank]))
    else:
        fam = text.upper()
        if fam not in "ABCDEFG" or len(fam) != 1:
            raise UsageError(f"unknown type {t!r}")
        if args.rank is None:
            raise UsageError(f"--rank is required with a bare family {fam}")
        fam_rank.append((fam, _parse_ranks(args.rank)))
    out = []
    for fam, ranks in fam_rank:
        for n in ranks:
            ft = FiniteType(fam, n)
            _validate_rank(ft)
            out.append(ft)
    return out


def _parse_ranks(text):
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _validate_rank(ft):
    v = _RANK_VALIDITY[ft.family]
    if isinstance(v, tuple):
        lo, hi = v
    else:
        lo, hi = v, None
    if ft.rank < lo or (hi is not None and ft.rank > hi):
        table = "A: n>=1, B: n>=2 (blunt B needs n>=3), C: n>=2, D: n>=4, E: 6..8, F: 4, G: 2"
        raise UsageError(f"invalid rank {ft.rank} for family {ft.family}; valid ranks: {table}")


def _select_omegas(pair, selector):
    og = pair.omega_prime
    out = []
    for i, e in enumerate(og.elements):
        oc = triples.omega_class(pair, e)
        keep = (
            selector == "all"
            or (selector == "trivial" and oc.label == "1")
            or (selector == "nontrivial" and oc.label != "1")
            or (selector == "generator" and og.is_generator(e))
            or (selector == "in-underline" and _in_underline(pair, e, oc))
            or (selector == "not-in-underline" and not _in_underline(pair, e, oc))
            or selector == f"index:{i}"
        )
        if selector in ("in-underline", "not-in-underline") and pair.ftype.family != "D":
            raise UsageError(f"omega selector {selector!r} applies to type D only")
        if selector.startswith("index:"):
            try:
                int(selector.split(":", 1)[1])
            except ValueError:
                raise UsageError(f"bad omega selector {selector!r}")
        if keep:
            out.append((i, e, oc))
    if selector == "generator" and pair.ftype.family not in ("A", "E"):
        # generators exist in any cyclic group; allow but may be empty
        pass
    return out


def _in_underline(pair, e, oc):
    return oc.label in ("1", "un")


def _omega_record(index, coords, oc):
    return {"index": index, "coords": list(coords), "label": oc.label, "order": oc.order}


def _sharp_record(tr, strict):
    return {
        "kind": "sharp",
        "affine_type": str(tr.affine_type) + "^a",
        "rank": tr.affine_type.rank,
        "omega": list(tr.omega),
        "omega_label": tr.omega_label,
        "i_nodes": list(tr.i_nodes),
        "orbit_size": len(tr.orbit),
        "factors": rootdata.expr_str(tr.expr),
        "params": list(tr.params) if tr.params else None,
        "case": tr.case,
        "strictly_sharp": strict,
    }


def _blunt_record(b, strict_pair):
    return {
        "kind": "blunt",
        "affine_type": str(b.affine_type) + "^a",
        "rank": b.affine_type.rank,
        "omega": list(b.omega),
        "omega_label": b.omega_label,
        "deleted_node": b.deleted_node,
        "mark": b.mark,
        "factors": rootdata.expr_str(b.expr),
        "params": list(b.params) if b.params else None,
        "case": b.case,
        "witnesses": [list(map(list, w)) for w in b.witnesses],
        "strictly_blunt_pair": strict_pair,
    }


def cmd_classify(args):
    kinds = {"sharp", "strictly-sharp", "blunt", "strictly-blunt"}
    if args.kind not in kinds:
        raise UsageError(f"kind must be one of {sorted(kinds)}")
    records = []
    for ft in _parse_types(args):
        blunt_side = ft if args.kind in ("blunt", "strictly-blunt") else rootdata.dual_affine_type(ft)
        pair = fungroup.dual_pair(blunt_side)
        for index, coords, oc in _select_omegas(pair, args.omega):
            strict_pair = triples.strictly_blunt_witness(blunt_side, coords) is not None
            if args.kind == "strictly-blunt":
                records.append({
                    "kind": "strictly-blunt",
                    "affine_type": str(blunt_side) + "^a",
                    "rank": blunt_side.rank,
                    "omega": list(coords),
                    "omega_label": oc.label,
                    "strictly_blunt": strict_pair,
                })
            elif args.kind == "blunt":
                for b in triples.enumerate_blunt(blunt_side, coords, args.mode_blunt):
                    records.append(_blunt_record(b, strict_pair))
            else:
                for tr in triples.enumerate_sharp(ft, coords, args.mode):
                    strict = triples.is_strictly_sharp(tr) if args.mode == "normative" else False
                    if args.kind == "strictly-sharp" and not strict:
                        continue
                    records.append(_sharp_record(tr, strict))
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "classify",
        "query": {"kind": args.kind, "type": args.type, "rank": args.rank,
                  "omega": args.omega, "mode": args.mode},
        "results": records,
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_bijection(args):
    records = []
    for ft in _parse_types(args):
        pair = fungroup.dual_pair(ft)
        for index, coords, oc in _select_omegas(pair, args.omega):
            for b, tr, tag in corresp.iota_tilde(ft, coords):
                records.append({
                    "blunt": _blunt_record(b, False),
                    "sharp": _sharp_record(tr, triples.is_strictly_sharp(tr)),
                    "mark_tag": [tag[0], tag[1]],
                })
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "bijection",
        "query": {"type": args.type, "rank": args.rank, "omega": args.omega},
        "results": records,
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_theta(args):
    records = []
    for ft in _parse_types(args):
        blunt_side = rootdata.dual_affine_type(ft)
        pair = fungroup.dual_pair(blunt_side)
        for index, coords, oc in _select_omegas(pair, args.omega):
            records.append({
                "affine_type": str(ft) + "^a",
                "omega": list(coords),
                "omega_label": oc.label,
                "theta": list(corresp.theta(ft, coords)),
            })
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "theta",
        "query": {"type": args.type, "rank": args.rank, "omega": args.omega},
        "results": records,
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_explain(args):
    text = [
        "Conventions used throughout:",
        " - affine node 0 carries the negative of the highest root (untwisted",
        "   affinization); marks are the coefficients of the unique positive",
        "   relation, normalized to 1 at node 0.",
        " - the fundamental group is realized as Z^n modulo the Cartan column",
        "   lattice (evaluations against simple roots); its diagram action is",
        "   the alcove-wall permutation of (coweight translation) * w_{0,j} w_0.",
        " - matching fibers use the evaluation chart of the node roots; the F",
        "   and G families use the coroot chart, which the fiber-count identity",
        "   pins (on simply laced types the charts agree).",
        " - sharp and blunt enumeration default to normative mode (the closed",
        "   parameterizations); literal/fibers modes apply the defining",
        "   predicates and may differ on a deterministic discrepancy list.",
        " - classical sharp parameter domains extend r to all odd values, so",
        "   degenerate factors (B0, A0, A-1, D1) appear; aliases normalize them.",
        " - theta for two-length small-mark types is the unresolved singleton",
        f"   {corresp.UNRESOLVED_SMALL_MARK!r}; nothing branches on its value.",
    ]
    _write_out("\n".join(text) + "\n", args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Verification harness
# ---------------------------------------------------------------------------


def _phi(m):
    return sum(1 for j in range(1, m + 1) if gcd(j, m) == 1)


def _exceptional_types():
    return [FiniteType.parse(s) for s in ("E6", "E7", "E8", "F4", "G2")]


def _classical_range(max_rank):
    for fam, lo in (("A", 1), ("B", 3), ("C", 2), ("D", 4)):
        for n in range(lo, max_rank + 1):
            yield FiniteType(fam, n)


def verify_tables(max_rank, findings):
    ok = True
    expected_sharp = {
        ("E8", "1"): ["E8"], ("E7", "1"): ["E7"], ("E7", "nontriv"): ["E6"],
        ("E6", "1"): ["E6"], ("E6", "gen"): ["D4"], ("F4", "1"): ["F4"], ("G2", "1"): ["G2"],
    }
    expected_blunt = {
        ("E8", "1"): ["A1xA2xA5", "A1xE7", "A2xE6", "A3xD5", "A4xA4", "D8", "E8"],
        ("E7", "1"): ["A1xA3xA3"], ("E7", "nontriv"): ["A2xA5", "E7"],
        ("E6", "1"): ["A2xA2xA2"], ("E6", "gen"): ["A1xA5", "E6"],
        ("F4", "1"): ["A1xA3", "A1xC3", "A2xA2", "B4", "F4"],
        ("G2", "1"): ["A1xA1", "A2", "G2"],
    }
    for t in _exceptional_types():
        pair = fungroup.dual_pair(t)
        for coords in pair.omega_prime.elements:
            label = triples.omega_class(pair, coords).label
            got = sorted(rootdata.expr_str(tr.expr) for tr in triples.enumerate_sharp(t, coords))
            want = sorted(expected_sharp.get((str(t), label), []))
            if got != want:
                ok = False
                findings.append(f"sharp list mismatch {t}^a omega={label}: {got} != {want}")
            gotb = sorted(rootdata.expr_str(b.expr) for b in triples.enumerate_blunt(t, coords))
            wantb = sorted(expected_blunt.get((str(t), label), []))
            if gotb != wantb:
                ok = False
                findings.append(f"blunt list mismatch {t}^a omega={label}: {gotb} != {wantb}")
    for x in _classical_range(max_rank):
        pair = fungroup.dual_pair(x)
        y = rootdata.dual_affine_type(x)
        for coords in pair.omega_prime.elements:
            oc = triples.omega_class(pair, coords)
            sharps = triples.enumerate_sharp(y, coords)
            strict = [tr for tr in sharps if triples.is_strictly_sharp(tr)]
            if len(strict) > 1:
                ok = False
                findings.append(f"strictly sharp not unique for {y}^a omega={oc.label}")
            want = triples.strictly_sharp_params(y.family, y.rank, "1" if oc.label == "1" else oc.label)
            got = {tr.params for tr in strict if tr.params is not None}
            if y.family != "A" and got != set(want):
                ok = False
                findings.append(f"strict x-formulas mismatch {y}^a omega={oc.label}: {got} != {want}")
            if y.family == "A" and bool(strict) != (oc.label == "gen"):
                ok = False
                findings.append(f"strict A mismatch {y}^a omega={oc.label}")
            wit = triples.strictly_blunt_witness(x, coords)  # raises on inconsistency
            blunts = triples.enumerate_blunt(x, coords)
            if wit is not None and 0 not in {b.deleted_node for b in blunts}:
                ok = False
                findings.append(f"strictly blunt pair {x}^a omega={oc.label} misses the finite class")
    return ok


def verify_group_theory(max_rank, findings):
    ok = True
    for x in list(_classical_range(max_rank)) + _exceptional_types():
        pair = fungroup.dual_pair(x)  # constructor enforces the action invariants
        if not pair.pairing().nondegenerate:
            ok = False
            findings.append(f"degenerate duality pairing for {x}")
        for s in range(pair.diagram.n_nodes):
            o = fungroup.omega_of_J(x, s)
            if not o.map_a.injective or not o.map_b.surjective:
                ok = False
                findings.append(f"corank-one maps fail for {x}, node {s}")
        fam, n = x.family, x.rank
        inv = pair.omega_prime.group.invariant_factors
        expect = {
            "A": (n + 1,) if n >= 1 else (),
            "B": (2,), "C": (2,),
            "D": (4,) if n % 2 else (2, 2),
        }.get(fam)
        if fam == "E":
            expect = {6: (3,), 7: (2,), 8: ()}[n]
        if fam in "FG":
            expect = ()
        if inv != expect:
            ok = False
            findings.append(f"group structure mismatch for {x}: {inv} != {expect}")
        if fam == "D":
            un = fungroup.underline_subgroup(pair.omega_prime)
            if len(un) != (1 if n == 4 else 2):
                ok = False
                findings.append(f"underline subgroup size wrong for {x}")
    return ok


def verify_lemma27(findings):
    ok, bad = triples.lemma27_equivalence(200, 201)
    if not ok:
        findings.append(f"mod-8 equivalence counterexamples: {bad[:5]}")
    return ok


def verify_counts(findings):
    ok = True
    e8 = FiniteType.parse("E8")
    pins = {5: 4, 4: 2, 2: 0, 3: 0}
    for node, want in sorted(pins.items()):
        _, wit = triples._fiber_witnesses(e8, node, ())
        if len(wit) != want:
            ok = False
            findings.append(f"fiber count pin fails at E8 node {node}: {len(wit)} != {want}")
    _, wit = triples._fiber_witnesses(e8, 4, ())
    flat = sorted(tuple(c[0] for c in w) for w in wit)
    if flat != [(1, 1, 1), (5, 2, 1)]:
        ok = False
        findings.append(f"witness pin fails at E8 node 4: {flat}")
    for t in _exceptional_types():
        pair = fungroup.dual_pair(t)
        for coords in pair.omega_prime.elements:
            for row in corresp.phi_count_report(t, coords):
                if not row["identity_holds"]:
                    ok = False
                    findings.append(f"phi identity fails: {t}^a {coords} node {row['node']}")
    return ok


def verify_backends(findings, max_rank=12):
    ok = True
    mismatches, sharp_ranks = sharpfin.crosscheck_backends(max_rank)
    if mismatches:
        ok = False
        findings.append(f"backend mismatches: {mismatches[:5]}")
    if not {2, 6}.issubset(sharp_ranks["B"]) or 4 not in sharp_ranks["D"]:
        ok = False
        findings.append(f"sharp ranks unexpected: {sharp_ranks}")
    for fam, lo in (("A", 1), ("B", 2), ("D", 4)):
        for n in range(lo, 9):
            t = FiniteType(fam, n)
            target = sharpfin.r_op(t)
            hits = 0
            for label in sharpfin.irreducible_labels(t):
                rec = sharpfin.generic_degree(t, label)
                if rec.z > target:
                    ok = False
                    findings.append(f"z exceeds r(op) at {t} {label}")
                if rec.special and rec.z == target:
                    hits += 1
            if hits > 1:
                ok = False
                findings.append(f"z-maximal special not unique at {t}")
    from fractions import Fraction
    for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        for n in range(lo, 7):
            t = FiniteType(fam, n)
            total = {}
            for label in sharpfin.irreducible_labels(t):
                rec = sharpfin.generic_degree(t, label)
                for i, c in enumerate(rec.coeffs):
                    if c:
                        total[i] = total.get(i, Fraction(0)) + Fraction(rec.dim * c, rec.denom)
            poincare = [1]
            for d in sharpfin.reflection_degrees(t):
                poincare = sharpfin._pmul_two_term(poincare, d, 0, -1)
                poincare = sharpfin._pdiv_two_term(poincare, 1, 0, -1)
            got = [total.get(i, Fraction(0)) for i in range(len(poincare))]
            if got != [Fraction(c) for c in poincare] or any(
                i >= len(poincare) and v for i, v in total.items()
            ):
                ok = False
                findings.append(f"Poincare sum rule fails for {t}")
    return ok


def verify_correspondence(max_rank, findings):
    ok = True
    for x in list(_classical_range(max_rank)) + _exceptional_types():
        pair = fungroup.dual_pair(x)
        for coords in pair.omega_prime.elements:
            try:
                corresp.iota_tilde(x, coords)
            except AssertionError as exc:
                ok = False
                findings.append(f"correspondence fails for {x}^a {coords}: {exc}")
            if triples.strictly_blunt_witness(x, coords) is not None:
                blunts = {b.deleted_node: b for b in triples.enumerate_blunt(x, coords)}
                tr = corresp.iota(x, coords, blunts[0])
                if not triples.is_strictly_sharp(tr):
                    ok = False
                    findings.append(f"finite-class image not strictly sharp for {x}^a {coords}")
    expected_theta = {
        ("E8", "1"): [1, 2, 2, 3, 4, 5, 6], ("E7", "1"): [4], ("E7", "nontriv"): [1, 3],
        ("E6", "1"): [3], ("E6", "gen"): [1, 2], ("F4", "1"): [1, 2, 2, 3, 4],
        ("G2", "1"): [1, 2, 3],
    }
    for t in _exceptional_types():
        pair = fungroup.dual_pair(t)
        for coords in pair.omega_prime.elements:
            label = triples.omega_class(pair, coords).label
            got = sorted(corresp.theta(t, coords))
            if got != expected_theta[(str(t), label)]:
                ok = False
                findings.append(f"theta mismatch for {t}^a omega={label}: {got}")
    for k in (3, 4, 5):
        t, table, omitted = corresp.class_order_embedding(k)
        if k == 5 and omitted != (4, 3):
            ok = False
            findings.append(f"omitted marks wrong for the S5 embedding: {omitted}")
    checked = 0
    for case in ("g'", "h", "h'", "i''"):
        ps = corresp.CASES[case]
        for xx in range(0, 130):
            for yy in range(0, 130):
                if ps.y_member(xx, yy):
                    corresp.f_param(case, xx, yy)
                    checked += 1
    if checked == 0:
        ok = False
        findings.append("side-rule sweep ran over nothing")
    return ok


def collect_discrepancies(max_rank):
    out = []
    for x in _classical_range(max_rank):
        pair = fungroup.dual_pair(x)
        y = rootdata.dual_affine_type(x)
        for coords in pair.omega_prime.elements:
            for kind, t, om, key, expr in triples.sharp_mode_discrepancies(y, coords):
                out.append({"list": "sharp", "kind": kind, "type": str(t) + "^a",
                            "omega": list(om), "nodes": list(key), "factors": expr})
            for kind, t, om, key, expr in triples.blunt_mode_discrepancies(x, coords):
                out.append({"list": "blunt", "kind": kind, "type": str(t) + "^a",
                            "omega": list(om), "deleted_node": key, "factors": expr})
    for t in _exceptional_types():
        pair = fungroup.dual_pair(t)
        for coords in pair.omega_prime.elements:
            for kind, ty, om, key, expr in triples.sharp_mode_discrepancies(t, coords):
                out.append({"list": "sharp", "kind": kind, "type": str(ty) + "^a",
                            "omega": list(om), "nodes": list(key), "factors": expr})
            for kind, ty, om, key, expr in triples.blunt_mode_discrepancies(t, coords):
                out.append({"list": "blunt", "kind": kind, "type": str(ty) + "^a",
                            "omega": list(om), "deleted_node": key, "factors": expr})
    return out


def cmd_verify(args):
    scopes = ("tables", "lemma27", "counts", "backends", "correspondence")
    if args.scope != "all" and args.scope not in scopes:
        raise UsageError(f"scope must be 'all' or one of {scopes}")
    run = scopes if args.scope == "all" else (args.scope,)
    max_rank = args.max_rank
    results = {}
    findings = []
    for scope in run:
        t0 = time.monotonic()
        if scope == "tables":
            passed = verify_tables(max_rank, findings) and verify_group_theory(
                min(max_rank, 24), findings
            )
        elif scope == "lemma27":
            passed = verify_lemma27(findings)
        elif scope == "counts":
            passed = verify_counts(findings)
        elif scope == "backends":
            passed = verify_backends(findings)
        else:
            passed = verify_correspondence(max_rank, findings)
        results[scope] = "pass" if passed else "fail"
        print(f"[verify] {scope}: {results[scope]} ({time.monotonic() - t0:.1f}s)",
              file=sys.stderr)
    discrepancies = collect_discrepancies(min(max_rank, args.discrepancy_rank))
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "query": {"scope": args.scope, "max_rank": max_rank},
        "report": {
            "results": results,
            "findings": findings,
            "mode_discrepancies": discrepancies,
        },
    }
    _emit(payload, args)
    return EXIT_OK if all(v == "pass" for v in results.values()) else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def _emit(payload, args):
    fmt = args.format
    if fmt == "json":
        text = json.dumps(_json_safe(payload), indent=2, sort_keys=False) + "\n"
    elif fmt == "csv":
        text = _to_csv(payload)
    else:
        text = _to_table(payload)
    _write_out(text, args)


def _write_out(text, args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_CSV_COLUMNS = {
    "sharp": ["kind", "affine_type", "rank", "omega", "omega_label", "i_nodes",
              "factors", "params", "case", "strictly_sharp"],
    "blunt": ["kind", "affine_type", "rank", "omega", "omega_label", "deleted_node",
              "mark", "factors", "params", "case", "strictly_blunt_pair"],
    "strictly-blunt": ["kind", "affine_type", "rank", "omega", "omega_label",
                       "strictly_blunt"],
}


def _to_csv(payload):
    rows = payload.get("results", [])
    buf = io.StringIO()
    if payload["command"] == "verify":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["scope", "result"])
        for k, v in payload["report"]["results"].items():
            writer.writerow([k, v])
        return buf.getvalue()
    if not rows:
        return ""
    kind = rows[0].get("kind", "sharp") if "kind" in rows[0] else "bijection"
    if payload["command"] == "theta":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["affine_type", "omega", "omega_label", "theta"])
        for r in rows:
            writer.writerow([r["affine_type"], r["omega"], r["omega_label"],
                             " ".join(map(str, r["theta"]))])
        return buf.getvalue()
    if payload["command"] == "bijection":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["affine_type", "omega", "blunt_factors", "blunt_params",
                         "sharp_factors", "sharp_params", "mark", "tag"])
        for r in rows:
            writer.writerow([
                r["blunt"]["affine_type"], r["blunt"]["omega"], r["blunt"]["factors"],
                r["blunt"]["params"], r["sharp"]["factors"], r["sharp"]["params"],
                r["mark_tag"][0], r["mark_tag"][1],
            ])
        return buf.getvalue()
    cols = _CSV_COLUMNS[kind]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in rows:
        writer.writerow([_csv_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return v


def _to_table(payload):
    if payload["command"] == "verify":
        lines = ["scope        result", "------------ ------"]
        for k, v in payload["report"]["results"].items():
            lines.append(f"{k:12s} {v}")
        if payload["report"]["findings"]:
            lines.append("findings:")
            lines.extend("  " + f for f in payload["report"]["findings"])
        lines.append(
            f"mode discrepancies: {len(payload['report']['mode_discrepancies'])}"
        )
        return "\n".join(lines) + "\n"
    rows = payload.get("results", [])
    if not rows:
        return "(no results)\n"
    if payload["command"] == "theta":
        return "\n".join(
            f"{r['affine_type']:6s} omega={r['omega_label']:8s} "
            f"theta={{{', '.join(map(str, r['theta']))}}}"
            for r in rows
        ) + "\n"
    if payload["command"] == "bijection":
        return "\n".join(
            f"{r['blunt']['affine_type']:6s} omega={r['blunt']['omega_label']:8s} "
            f"{r['blunt']['factors']:>18s} {str(r['blunt']['params'] or ''):>10s} -> "
            f"{r['sharp']['factors']:<18s} {str(r['sharp']['params'] or ''):<10s} "
            f"m={r['mark_tag'][0]}#{r['mark_tag'][1]}"
            for r in rows
        ) + "\n"
    out = []
    for r in rows:
        bits = [f"{r['affine_type']:6s}", f"omega={r['omega_label']:8s}"]
        if r["kind"] == "sharp":
            bits += [f"I={r['factors']:<18s}", f"params={r['params']}",
                     f"strict={r['strictly_sharp']}"]
        elif r["kind"] == "blunt":
            bits += [f"J={r['factors']:<18s}", f"node={r['deleted_node']}",
                     f"mark={r['mark']}", f"params={r['params']}"]
        else:
            bits += [f"strictly_blunt={r['strictly_blunt']}"]
        out.append(" ".join(str(b) for b in bits))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="sharpblunt",
        description="Sharp/blunt triple classification for dual pairs of affine Weyl groups",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, omega_default="all"):
        sp.add_argument("--type", required=True, help="type, e.g. E8, B6, or a bare family like C")
        sp.add_argument("--rank", help="rank or range, e.g. 4 or 2..20")
        sp.add_argument("--omega", default=omega_default,
                        help="all | trivial | nontrivial | generator | in-underline |"
                             " not-in-underline | index:k")
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
        sp.add_argument("--out", help="write output to FILE")

    sp = sub.add_parser("classify", help="enumerate triples")
    sp.add_argument("kind", choices=("sharp", "strictly-sharp", "blunt", "strictly-blunt"))
    common(sp)
    sp.add_argument("--mode", choices=("normative", "literal"), default="normative")
    sp.add_argument("--mode-blunt", dest="mode_blunt", choices=("normative", "fibers"),
                    default="normative")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("bijection", help="emit the enhanced blunt-to-sharp tables")
    common(sp)
    sp.set_defaults(func=cmd_bijection)

    sp = sub.add_parser("theta", help="emit deleted-node mark multisets")
    common(sp)
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("verify", help="run the verification harness")
    sp.add_argument("--scope", default="all",
                    help="all | tables | lemma27 | counts | backends | correspondence")
    sp.add_argument("--max-rank", type=int,
                    default=int(os.environ.get("SHARPBLUNT_MAX_RANK", DEFAULT_MAX_RANK)))
    sp.add_argument("--discrepancy-rank", type=int, default=12,
                    help="rank bound for the literal/fiber mode comparison")
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.add_argument("--out", help="write the report to FILE")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("explain", help="print the convention ledger")
    sp.add_argument("--out", help="write to FILE")
    sp.set_defaults(func=cmd_explain)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except rootdata.TypeError_ as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
