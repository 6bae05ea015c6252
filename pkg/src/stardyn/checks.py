"""Every invariant suite for one system, collected into a single report."""

import random

from .covrep import build_shifted_copies_rep, build_strict_rep, correspondence_check, structural_checks, verify_CR
from .errors import ContractBreach
from .finalg import classify
from .natext import NaturalExtension, normal_form_coordinates
from .pdsys import duality_report
from .samplers import random_element
from .spectral import brute_force_infinite_prefixes, cycle_prefixes, natural_extension_system_check
from .transfer import (
    canonical_nondegenerate_transfer,
    complete_transfer,
    completeness_report,
    conditional_expectation,
    is_nondegenerate,
    is_transfer,
    satisfies_complete_identity,
    uniqueness_check,
)
from .unitize import unitize_kernel

__all__ = ["verify_all", "SUITES"]

NORMAL_FORM_SAMPLES = 5


def _classification(system, depth):
    cls = classify(system.phi)
    rep = completeness_report(system.phi)
    return {"pass": rep.complete == cls.complete, "complete": rep.complete, "items": rep.as_dict()}


def _transfer(system, depth):
    phi = system.phi
    tau = canonical_nondegenerate_transfer(phi)
    out = {"canonical transfer": is_transfer(phi, tau), "non-degenerate": is_nondegenerate(phi, tau)}
    conditional_expectation(phi, tau)
    out["conditional expectation"] = True
    if classify(phi).complete:
        out["complete identity"] = satisfies_complete_identity(phi, complete_transfer(phi))
    if system.algebra.is_commutative():
        out["uniqueness"] = uniqueness_check(phi)
    out["pass"] = all(v for k, v in out.items() if k != "uniqueness")
    return out


def _unitization(system, depth):
    return {"pass": unitize_kernel(system.phi).check()}


def _tower(system, depth):
    ext = NaturalExtension(system.phi)
    levels = max(depth, 1)
    tower = ext.verify_tower(levels)
    axioms = ext.verify_transfer_axioms(levels)
    level = [ext.level_checks(n) for n in range(levels + 1)]
    dims = [ext.dim(n) for n in range(levels + 1)]
    out = {
        "dims": dims,
        "identities": tower.ok,
        "transfer axioms": axioms.ok,
        "unital kernel": all(c["unital kernel"] for c in level),
        "hereditary range": all(c["hereditary range"] for c in level),
    }
    if classify(system.phi).complete:
        dim = system.algebra.dim
        out["fixed point"] = dims == [dim] * len(dims) and all(
            ext.bonding_rank(n) == dim for n in range(levels + 1))
    out["pass"] = all(v for k, v in out.items() if k != "dims")
    return out


def _normal_form(system, depth):
    ext = NaturalExtension(system.phi)
    rng = random.Random(depth)
    ok = True
    for _ in range(NORMAL_FORM_SAMPLES):
        n = rng.randint(0, max(depth, 1))
        bs = [random_element(rng, system.algebra) for _ in range(n + 1)]
        x = ext.from_transfer_sum(bs)
        coords = ext.to_coordinates(x)
        ok &= tuple(coords) == tuple(normal_form_coordinates(system.phi, bs))
        ok &= ext.from_coordinates(coords).same_level_equal(x)
    return {"pass": bool(ok), "samples": NORMAL_FORM_SAMPLES}


def _duality(system, depth):
    rows = duality_report(system.partial_map)
    return {"pass": True, "rows": rows}


def _spectrum(system, depth):
    m = system.partial_map
    out = natural_extension_system_check(m, max(depth, 1))
    length = max(12, len(m) + 1)
    k = length - len(m)
    out["X_inf oracle"] = brute_force_infinite_prefixes(m, length) == cycle_prefixes(m, k)
    out["pass"] = out["pass"] and out["X_inf oracle"]
    return out


def _covrep(system, depth):
    m = system.partial_map
    ctx = build_strict_rep(m, depth)
    strict = verify_CR(ctx)
    structural_checks(ctx)
    rng = random.Random(depth)
    lists = [[random_element(rng, system.algebra, gaussian=False) for _ in range(rng.randint(1, 3))]
             for _ in range(3)]
    corr = correspondence_check(ctx, lists)
    out = {"strict": strict, "correspondence": corr["pass"]}
    ok = corr["pass"] and all(r["status"] == "pass" for r in strict.values())
    if m.is_injective():
        ctx13 = build_shifted_copies_rep(m, depth)
        ex = verify_CR(ctx13, ("CR1", "CR1'", "CR1''", "CR2"))
        structural_checks(ctx13)
        out["shifted copies"] = ex
        ok &= all(ex[r]["status"] == "pass" for r in ("CR1", "CR1'", "CR2"))
        ok &= ex["CR1''"]["status"] == "fail"
    out["pass"] = bool(ok)
    return out


SUITES = (
    ("classification", _classification, False),
    ("transfer", _transfer, False),
    ("unitization", _unitization, False),
    ("tower", _tower, False),
    ("normal form", _normal_form, False),
    ("duality", _duality, True),
    ("spectrum", _spectrum, True),
    ("covariant representations", _covrep, True),
)


def verify_all(system, depth):
    """``{suite: result}`` plus an overall ``pass``; a ContractBreach fails its suite."""
    report = {}
    for name, run, needs_map in SUITES:
        if needs_map and system.partial_map is None:
            continue
        try:
            report[name] = run(system, depth)
        except ContractBreach as exc:
            report[name] = {"pass": False, "breach": str(exc)}
    return {"pass": all(r["pass"] for r in report.values()), "suites": report}
