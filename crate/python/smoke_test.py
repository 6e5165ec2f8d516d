"""Smoke test for the siltkit_py extension module.

Run after `pip install -e python --no-build-isolation`:

    python python/smoke_test.py
"""

import json

import siltkit_py


def main() -> None:
    assert "a2" in siltkit_py.corpus_names()

    hasse = json.loads(siltkit_py.hasse("a2"))
    assert len(hasse["vertices"]) == 5 and len(hasse["edges"]) == 5
    assert not hasse["truncated"]

    report = json.loads(siltkit_py.verify("a2", suite="all", seed=7))
    outcomes = {s["suite"]: s["outcome"] for s in report["suites"]}
    assert set(outcomes.values()) == {"pass"}, outcomes

    code, text = siltkit_py.run(["check", "--algebra", "kronecker"])
    assert code == 0 and "dim 4, |A| = 2" in text, text

    code, _ = siltkit_py.run(["hasse", "--algebra", "kronecker", "--max-nodes", "5"])
    assert code == 2

    try:
        siltkit_py.verify("a2", suite="nonsense")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    print("siltkit_py smoke test passed:", ", ".join(f"{k}={v}" for k, v in outcomes.items()))


if __name__ == "__main__":
    main()
