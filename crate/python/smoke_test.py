"""Smoke test for the compiled extension.

Build it with `cargo build --release -p saut-morse-py --features extension-module`;
the script picks the library up from target/release when `saut_morse` is not
already importable.
"""

import json
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

try:
    import saut_morse
except ImportError:
    built = os.path.join(ROOT, "target", "release", "libsaut_morse_py.so")
    where = tempfile.mkdtemp()
    shutil.copy(built, os.path.join(where, "saut_morse.so"))
    sys.path.insert(0, where)
    import saut_morse


def main():
    graphs = saut_morse.enumerate(1, 1, 1)
    assert len(graphs) == 5, len(graphs)
    docs = [json.loads(g) for g in graphs]
    assert all(d["m"] == 1 and d["mode"] == "spine" for d in docs)
    degrees = sorted(saut_morse.weighted_degree(g) for g in graphs)
    assert degrees == [0, 1, 1, 1, 1], degrees

    labeled = saut_morse.enumerate(1, 2, 2, decoration="pure")
    unlabeled = saut_morse.enumerate(1, 2, 2)
    assert len(labeled) > len(unlabeled)
    forms = {saut_morse.canonical(g) for g in unlabeled}
    assert len(forms) == len(unlabeled)

    # the rose is the unique graph of weighted degree 0, with empty descending link
    rose = next(g for g in graphs if saut_morse.weighted_degree(g) == 0)
    link = saut_morse.descending_link(rose)
    assert link["total"]["values"] == [1] and link["total"]["start"] == -1, link

    circle = saut_morse.simplicial_betti([[0, 1], [1, 2], [0, 2]])
    assert circle["start"] + circle["values"].index(1) == 1, circle

    orbit = saut_morse.orbit_homology(2, 0, 1)
    assert orbit["cells"] == [3, 2], orbit
    assert orbit["euler"] == 1

    code, report = saut_morse.run(["selftest"])
    assert code == 0 and json.loads(report)["passed"]
    code, report = saut_morse.run(["stability", "--map", "mu", "-n", "0", "-m", "2", "-k", "1"])
    assert code == 1 and not json.loads(report)["passed"]

    try:
        saut_morse.enumerate(1, 0, 0, decoration="spiral")
    except ValueError:
        pass
    else:
        raise AssertionError("bad decoration accepted")
    try:
        saut_morse.weighted_degree("{}")
    except ValueError:
        pass
    else:
        raise AssertionError("bad document accepted")

    print("smoke test passed, module version", saut_morse.__version__)


if __name__ == "__main__":
    main()
