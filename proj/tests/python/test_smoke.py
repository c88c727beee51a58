import json
import threading

import pytest

import jacring


def test_fermat_quartic_hodge():
    ring = jacring.Ring.preset("fermat-quartic")
    assert [ring.dim(q, 0) for q in range(3)] == [1, 19, 1]
    assert [row["primitive"] for row in ring.hodge(0)] == [1, 19, 1]
    assert ring.socle_degree == (2, 0)


def test_spec_text_and_prime_field():
    text = "field gfp 101\nn 2\nF 2: x0^2 + x1^2 + x2^2\nG 1: x0\nG 1: x1\n"
    ring = jacring.Ring(text)
    assert ring.field == "gfp 101"
    assert (ring.n, ring.r, ring.s) == (2, 1, 2)
    assert ring.transversal()
    assert jacring.canonical_spec(ring.spec) == ring.spec
    assert jacring.spec_hash(text) == jacring.spec_hash(ring.spec)


def test_pairing_and_basis():
    ring = jacring.Ring.preset("elliptic-line")
    rep = ring.pairing(0, 0)
    assert rep["perfect"]
    assert rep["left_dim"] == rep["right_dim"] == rep["rank"]
    assert len(ring.basis(1, 1)) == ring.dim(1, 1) == 1


def test_torelli_and_verify():
    ring = jacring.Ring.preset("quartic-curve")
    t = ring.torelli(1)
    assert t["predicate"] and t["surjective"] and not t["violation"]
    checks = jacring.Ring.preset("conic-two-lines").verify(seed=3)
    assert checks and all(ok for _, ok, _ in checks)


def test_input_errors_are_value_errors():
    with pytest.raises(jacring.InputError, match="byte"):
        jacring.Ring("n 2\nF 2: x0^2 + * x1\n")
    with pytest.raises(ValueError, match="unknown preset"):
        jacring.Ring.preset("no-such-preset")


def test_run_cli():
    code, out, err = jacring.run(["--no-cache", "dim", "1", "0"], stdin=jacring.preset_spec("fermat-quartic"))
    assert code == jacring.EXIT_OK, err
    doc = json.loads(out)
    assert doc["result"]["dim"] == 19
    code, _, err = jacring.run(["--no-cache", "dim", "0", "0"], stdin="n 2\nF 3: x0^2\n")
    assert code == jacring.EXIT_INPUT
    assert "line 2" in err


def test_presets_listed():
    names = {name for name, _, _ in jacring.presets()}
    assert {"fermat-quartic", "conic-two-lines", "nodal-cubic"} <= names


def test_threads_share_a_ring():
    ring = jacring.Ring.preset("cubic-three-lines")
    expected = [ring.dim(q, l) for q in range(2) for l in range(3)]
    fresh = jacring.Ring.preset("cubic-three-lines")
    results = [None] * 4

    def work(i):
        results[i] = [fresh.dim(q, l) for q in range(2) for l in range(3)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)
