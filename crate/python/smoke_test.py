#!/usr/bin/env python3
"""Smoke test for the reconfig_py extension module.

Builds the cdylib with cargo if needed, stages it under an importable name,
and exercises the main operations end to end.
"""

import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> Path:
    lib = None
    for profile in ("release", "debug"):
        cand = ROOT / "target" / profile / "libreconfig_py.so"
        if cand.exists():
            lib = cand
            break
    if lib is None:
        subprocess.run(
            ["cargo", "build", "-p", "reconfig-py", "--release"],
            cwd=ROOT,
            check=True,
        )
        lib = ROOT / "target" / "release" / "libreconfig_py.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = Path(tempfile.mkdtemp(prefix="reconfig-py-"))
    target = stage / f"reconfig_py{suffix}"
    shutil.copy2(lib, target)
    return stage


def main() -> int:
    sys.path.insert(0, str(stage_module()))
    import reconfig_py as rp

    # Graph construction and metrics.
    c6 = rp.Hypergraph.cycle(6)
    assert c6.n == 6
    assert c6.diameter() == 3
    assert c6.is_connected()
    parsed = rp.Hypergraph.parse(c6.to_text())
    assert parsed.edges() == c6.edges()

    # Condition checks.
    assert rp.check_condition(c6, "vc", [0, 2, 4])
    assert rp.check_condition(c6, "is", [0, 2, 4])
    assert not rp.check_condition(c6, "ds", [0])

    # Single moves.
    move = rp.find_move(c6, [0, 2, 4], [1, 3, 5], "tj:all:1")
    assert move == [(0, 1), (2, 3), (4, 5)]
    assert rp.find_move(c6, [0, 2, 4], [1, 3, 5], "tj:2:3") is None

    # Solve each condition and re-validate the emitted sequence.
    for condition, start, target in [
        ("vc", [0, 2, 4], [1, 3, 5]),
        ("ds", [0, 3], [1, 4]),
        ("is", [0, 3], [1, 4]),
    ]:
        seq = rp.solve(c6, condition, start, target)
        rp.validate_sequence(c6, condition, seq["rule"], seq["configs"], seq["moves"])
        assert seq["configs"][0] == sorted(start)
        assert seq["configs"][-1] == sorted(target)

    # Oracle agrees with the cycle lower bound: both minimum covers of C6
    # are mutually unreachable when one token must stay put.
    stuck = rp.oracle_reachability(c6, "vc", "tj:2:3", [0, 2, 4], [1, 3, 5])
    assert not stuck["reachable"]
    free = rp.oracle_reachability(c6, "vc", "tj:all:1", [0, 2, 4], [1, 3, 5])
    assert free["reachable"] and free["shortest"] == 1
    rp.validate_sequence(
        c6, "vc", "tj:all:1", free["witness"]["configs"], free["witness"]["moves"]
    )

    # The vertex-cover space of C6 is one component of two states.
    assert rp.component_report(c6, "vc", "tj:all:1", 3) == [(2, 1)]

    # Gadget generation self-verifies before returning.
    gadget = rp.gen_gadget("ds-gadget", 2)
    assert gadget["n"] == 10 and gadget["k"] == 3
    g = rp.Hypergraph.parse(gadget["graph"])
    blocked = rp.oracle_reachability(
        g, "ds", "tt:0:2", gadget["start"], gadget["target"]
    )
    assert not blocked["reachable"]

    # Errors surface as ValueError.
    try:
        rp.solve(c6, "vc", [0, 1, 2], [1, 3, 5])
    except ValueError as e:
        assert "vertex cover" in str(e)
    else:
        raise AssertionError("invalid input must raise")

    print("smoke test: OK")
    return 0


if __name__ == "__main__":
    sys.exit(main())
