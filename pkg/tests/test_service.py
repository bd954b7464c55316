"""HTTP surface: schemas, determinism, and error mapping."""

import httpx
import pytest

from asymhecke.cli import _SyncASGITransport
from asymhecke.service import app


@pytest.fixture(scope="module")
def client():
    with httpx.Client(transport=_SyncASGITransport(app),
                      base_url="http://testhost") as c:
        yield c


def test_info(client):
    data = client.get("/").json()
    assert data["name"] == "asymhecke"


class TestExpand:
    def test_standard_basis_symbolic(self, client):
        r = client.post("/expand", json={"word": "0", "basis": "T",
                                         "cutoff": 8, "precision": 16})
        assert r.status_code == 200
        data = r.json()
        assert data["basis"] == "T"
        terms = {t["w"]: t["coeff"] for t in data["terms"]}
        assert terms[""]["dir"] == "desc"
        # coefficient of T_1 is 1/(1+q) = q^-1 - q^-2 + ... in v-exponents
        assert terms[""]["-2"] == 1
        assert terms[""]["-4"] == -1

    def test_numeric_specialization(self, client):
        r = client.post("/expand", json={"word": "0", "basis": "T",
                                         "cutoff": 8, "q": 3})
        data = r.json()
        values = {t["w"]: t["value"] for t in data["terms"]}
        assert values[""] == "1/4"
        assert values["0"] == "1/4"
        assert values["1"] == "-1/12"

    def test_canonical_window(self, client):
        r = client.post("/expand", json={"word": "0101", "basis": "C",
                                         "cutoff": 8, "precision": 8})
        data = r.json()
        terms = {t["w"]: t["coeff"] for t in data["terms"]}
        # cone-stack expansion: the top word carries -(v^7 + v^5 + v^3 + v)
        assert terms["0101"] == {"1": -1, "3": -1, "5": -1, "7": -1}
        assert all(w.startswith("0") for w in terms)

    def test_empty_word_is_parse_error(self, client):
        r = client.post("/expand", json={"word": ""})
        assert r.status_code == 400

    def test_bad_word_is_parse_error(self, client):
        r = client.post("/expand", json={"word": "011"})
        assert r.status_code == 400

    def test_small_cutoff_conflict(self, client):
        r = client.post("/expand", json={"word": "0101", "cutoff": 3})
        assert r.status_code == 409

    def test_deterministic(self, client):
        payload = {"word": "01", "basis": "Cprime", "cutoff": 10}
        a = client.post("/expand", json=payload).content
        b = client.post("/expand", json=payload).content
        assert a == b


class TestAct:
    def test_projector_action(self, client):
        r = client.post("/act", json={"t": "0", "on": "phibar(0)"})
        data = r.json()
        assert data["result"] == {"phibar(0)": {"0": 1}}

    def test_standard_action(self, client):
        r = client.post("/act", json={"T": "01", "on": "phi(3)"})
        data = r.json()
        assert data["orbit"] == {"phi(2)": {"0": 1}}

    def test_identity_t_element_annihilates_orbits(self, client):
        r = client.post("/act", json={"t": "", "on": "psi(0)"})
        data = r.json()
        assert data["result"] == {}
        assert data["pretty"] == "0"

    def test_requires_exactly_one_element(self, client):
        assert client.post("/act", json={"on": "psi(0)"}).status_code == 400
        assert client.post("/act", json={"t": "0", "T": "1",
                                         "on": "psi(0)"}).status_code == 400

    def test_bad_symbol(self, client):
        r = client.post("/act", json={"t": "0", "on": "phibar[0]"})
        assert r.status_code == 400

    def test_stabilization_failure_maps_to_424(self, client):
        r = client.post("/act", json={"t": "0", "on": "phibar(0)",
                                      "cutoff": 5, "floor": -6})
        assert r.status_code == 424


class TestVerify:
    def test_gamma_suite(self, client):
        r = client.post("/verify", json={"suite": "gamma", "cutoff": 6})
        data = r.json()
        assert data["passed"]
        names = {c["name"] for c in data["checks"]}
        assert "gamma/simple-idempotents" in names

    def test_images_suite(self, client):
        r = client.post("/verify", json={"suite": "images", "cutoff": 12,
                                         "precision": 16})
        data = r.json()
        assert data["passed"], data["checks"]


def test_gamma_table(client):
    r = client.post("/gamma-table", json={"max_length": 2})
    data = r.json()
    entries = {(e["x"], e["y"], e["z"]): e["gamma"] for e in data["entries"]}
    assert entries[("0", "0", "0")] == 1
    assert entries[("1", "1", "1")] == 1
    assert ("0", "1", "0") not in entries
    assert all(g == 1 for g in entries.values())


def test_schwartz_endpoint(client):
    r = client.post("/schwartz", json={"word": "0", "q0": 2, "n_max": 12})
    data = r.json()
    assert data["bounded"] is True
    assert data["tailMonotone"] is True
