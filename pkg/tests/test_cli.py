import json
import subprocess
import sys

import numpy as np
import pytest

from padic_lab.cli import COMMANDS, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, execute, load_schema, run
from padic_lab.hilbert import QuasiHilbert, bounded_algebra


def call(argv, obj):
    status, text = execute(argv, stdin_obj=obj)
    return status, json.loads(text)


def test_every_command_has_a_schema():
    for name in COMMANDS:
        assert load_schema(name)["type"] == "object"


def test_simplicity_pair_groupoid():
    status, doc = call(["simplicity", "--prime", "3"], {"groupoid": "pair:3"})
    assert status == EXIT_OK and doc["result"]["p_simple"] and doc["result"]["agree"]
    assert doc["seed"] == 0
    status, doc = call(["simplicity", "--prime", "2"], {"groupoid": "group:C2"})
    assert status == EXIT_NEGATIVE and doc["result"]["verdict"]["witness"]


def test_ultra_nilpotent():
    status, doc = call(["ultra", "--prime", "2"], {"algebra": "nilpotent_2x2"})
    assert status == EXIT_OK and doc["result"]["nontrivial"]
    status, doc = call(["ultra", "--prime", "5"], {"algebra": "nilpotent_2x2"})
    assert status == EXIT_OK and not doc["result"]["nontrivial"]


def test_orthogonalize_identity():
    status, doc = call(["orthogonalize", "--prime", "5"], {"gram": [[1, 0], [0, 1]]})
    res = doc["result"]
    assert status == EXIT_OK and res["checks"]["UtGU_diagonal"] == "pass"
    assert res["normalized"]["m"] == 2
    status, doc = call(["orthogonalize", "--prime", "5"], {"gram": [[1, 0], [0, 5]]})
    assert status == EXIT_NEGATIVE and not doc["result"]["valid"]


def test_negative_verdicts():
    status, doc = call(["certify-qc", "--prime", "5"], {"algebra": "antisymmetric_4x4"})
    assert status == EXIT_NEGATIVE and doc["result"]["counterexample"] == [0, 1]
    status, doc = call(["factor", "--prime", "3"], {"subalgebra": {"group": "S3"}})
    assert status == EXIT_NEGATIVE and doc["result"]["center_rank"] == 3 and doc["result"]["witness"]
    status, doc = call(["factor", "--prime", "3"], {"subalgebra": {"compacts": 3}})
    assert status == EXIT_OK


def test_vn_commands():
    status, doc = call(["commutant", "--prime", "3"], {"subalgebra": {"compacts": 4}})
    assert status == EXIT_OK and doc["result"]["commutant"]["rank"] == 1
    status, doc = call(["bicommutant", "--prime", "5"], {"subalgebra": {"group": "Q8"}})
    assert status == EXIT_OK and doc["result"]["is_vn"]
    status, doc = call(["center", "--prime", "5"], {"subalgebra": {"group": "Q8"}})
    assert doc["result"]["rank"] == 5
    status, doc = call(["class-sums"], {"group": "S3"})
    assert status == EXIT_OK and doc["result"]["sizes"] == [1, 3, 2]


def test_gns_and_tate():
    status, doc = call(["gns", "--prime", "5", "--precision", "4"], {"algebra": "matrix:2", "state": 0})
    assert status == EXIT_OK and doc["result"]["hilbert"]["gram"] == [["2", "0"], ["0", "2"]]
    status, doc = call(["tate-demo"], {"n": 2, "p": 5, "N": 8})
    assert status == EXIT_OK and doc["result"]["norms_preserved"]


def test_errors_exit_one():
    status, doc = call(["ultra", "--prime", "4"], {"algebra": "nilpotent_2x2"})
    assert status == EXIT_ERROR and "prime" in doc["error"]["message"]
    status, doc = call(["ultra", "--prime", "5"], {"algebra": "no_such_thing"})
    assert status == EXIT_ERROR
    status, doc = call(["ultra", "--prime", "5", "--precision", "1"], {"algebra": "scalars"})
    assert status == EXIT_ERROR
    # standardization is odd-p only
    status, doc = call(["standardize", "--prime", "2"], {"gram": [[1]]})
    assert status == EXIT_ERROR and doc["error"]["error"] == "UnsupportedPrime"
    status, text = execute(["ultra"], stdin=_Stdin("{not json"))
    assert status == EXIT_ERROR and json.loads(text)["error"]["error"] == "json"


class _Stdin:
    def __init__(self, text):
        self.text = text

    def read(self):
        return self.text


def test_schema_errors_use_json_pointers():
    bad = {"algebra": {"d": 2, "mult": [[[1, "x"], [0, 1]], [[0, 1], [0, 0]]], "invol": [[1, 0], [0, 1]]}}
    status, doc = call(["ultra", "--prime", "5"], bad)
    assert status == EXIT_ERROR and doc["error"]["error"] == "schema"
    assert doc["error"]["violations"][0]["path"] == "/algebra/mult/0/0/1"
    status, doc = call(["orthogonalize", "--prime", "5"], {})
    assert doc["error"]["violations"][0]["path"] == ""
    assert "gram" in doc["error"]["violations"][0]["message"]


def test_text_format():
    status, text = execute(["class-sums", "--format", "text"], stdin_obj={"group": "C3"})
    assert status == EXIT_OK
    lines = text.splitlines()
    assert lines[:3] == ["command: class-sums", "status: ok", "seed: 0"]
    assert "sizes: [1, 1, 1]" in lines


def test_determinism_in_process():
    job = (["certify-qc", "--prime", "5", "--seed", "7"], {"algebra": "matrix:2"})
    assert run(*job) == run(*job)
    assert '"seed": 7' in run(*job)


def test_determinism_subprocess(tmp_path):
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"algebra": "group:C3", "probes": 20}))
    outs = []
    for k in range(2):
        out = tmp_path / f"out{k}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "padic_lab", "represent", "--prime", "5", "--precision", "6",
             "--seed", "3", "--in", str(src), "--out", str(out)],
            capture_output=True, text=True, timeout=300,
        )
        assert proc.returncode == EXIT_OK, proc.stderr
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def _replay_standard_certificate(doc, gram, p, N):
    """Re-check a standardize certificate from the matrices it lists."""
    q = p**N
    B = bounded_algebra(QuasiHilbert.from_diagonal(gram, p, N))
    imgs = []
    for blocks in doc["images"]:
        mats = [np.array([[int(v) for v in row] for row in b], dtype=object) for b in blocks]
        imgs.append(mats)

    def combo(vec):
        out = [np.zeros_like(m) for m in imgs[0]]
        for i, c in enumerate(vec):
            if c % q:
                out = [(o + int(c) * m) % q for o, m in zip(out, imgs[i])]
        return out

    d = B.d
    for i in range(d):
        for j in range(d):
            prod = [a.dot(b) % q for a, b in zip(imgs[i], imgs[j])]
            want = combo(B.mult[i, j])
            assert all(np.array_equal(x, y) for x, y in zip(prod, want))
        star = combo(B.invol.a[:, i])
        assert all(np.array_equal(x.T, y) for x, y in zip(imgs[i], star))
    # isometry on the basis: every image has a unit entry somewhere
    assert all(any(int(v) % p for m in mats for v in m.ravel()) for mats in imgs)


def test_certificates_replay():
    p, N = 5, 6
    status, doc = call(["standardize", "--prime", str(p), "--precision", str(N)], {"gram": [[1, 0], [0, 2]]})
    res = doc["result"]
    assert status == EXIT_OK and res["checks"] == {
        "invol": "pass", "isometry": "pass", "mult": "pass", "target_involution": "transpose"}
    assert res["ambient_size"] == 16 == sum(res["block_sizes"])
    _replay_standard_certificate(res, [1, 2], p, N)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "padic_lab", "class-sums"], input='{"group": "Q8"}',
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == EXIT_OK
    assert sorted(json.loads(proc.stdout)["result"]["sizes"]) == [1, 1, 2, 2, 2]


@pytest.mark.parametrize("crit", [4, 9])
def test_selftest_subset(crit):
    status, doc = call(["selftest"], {"criteria": [crit]})
    assert status == EXIT_OK and doc["result"]["all_passed"]
