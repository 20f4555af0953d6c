from unittest.mock import patch

from flask import Flask
from flask.testing import FlaskClient

import app.web.routes as routes


class TestRoutes:
    def test_root(self, client: FlaskClient) -> None:
        """Test root endpoint returns service info"""
        response = client.get("/")
        assert response.status_code == 200
        data = response.get_json()
        assert data["service"] == "Schur transform synthesis"
        assert {endpoint["path"] for endpoint in data["endpoints"]} >= {"/health", "/decompose"}

    def test_health_check_ok(self, client: FlaskClient) -> None:
        """Test health check with an initialized service"""
        response = client.get("/health")
        assert response.status_code == 200
        assert response.get_json() == {"status": "ok", "version": routes.VERSION}

    def test_health_check_uninitialized(self, app: Flask) -> None:
        """Test health check before the service is injected"""
        with patch.object(routes, "verification_service", None):
            response = app.test_client().get("/health")
        assert response.status_code == 500
        assert response.get_json()["status"] == "error"


class TestDecomposeRoute:
    def test_singlet(self, client: FlaskClient) -> None:
        """Test the two-qubit singlet"""
        response = client.post("/decompose", json={"label": "su2:(1,1);0;0"})
        assert response.status_code == 200
        data = response.get_json()
        assert data["command"] == "decompose"
        assert data["inputs"]["label"] == "su2:(1,1);0;0"
        outputs = data["outputs"]
        assert outputs["exact"] is True
        assert outputs["norm_squared"] == 1.0
        assert {row["key"] for row in outputs["amplitudes"]} == {"10", "01"}

    def test_quark_letters(self, client: FlaskClient) -> None:
        """Test that SU(3) rows carry their quark string"""
        response = client.post("/decompose", json={"label": "su3:(1,1,1);0,0,0;1,0"})
        assert response.status_code == 200
        rows = response.get_json()["outputs"]["amplitudes"]
        assert len(rows) == 6
        assert all(sorted(row["quarks"]) == ["d", "s", "u"] for row in rows)

    def test_invalid_label(self, client: FlaskClient) -> None:
        """Test that label errors are reported as bad requests"""
        response = client.post("/decompose", json={"label": "su2:(2);0;0"})
        assert response.status_code == 400
        data = response.get_json()
        assert data["status"] == "error"
        assert "replay_path" in data["message"]

    def test_missing_label(self, client: FlaskClient) -> None:
        """Test payload validation"""
        assert client.post("/decompose", json={"labels": []}).status_code == 400
        assert client.post("/decompose", json={"label": 3}).status_code == 400
        response = client.post("/decompose", data="not json", content_type="application/json")
        assert response.status_code == 400

    def test_unexpected_error(self, client: FlaskClient) -> None:
        """Test that unexpected failures return 500"""
        with patch("app.web.routes.decompose", side_effect=RuntimeError("boom")):
            response = client.post("/decompose", json={"label": "su2:(1,1);0;0"})
        assert response.status_code == 500
        assert response.get_json()["message"] == "boom"


class TestResourceRoutes:
    def test_su2_resources(self, client: FlaskClient) -> None:
        """Test measured counts of the four-qubit circuit"""
        response = client.get("/resources/su2/4")
        assert response.status_code == 200
        data = response.get_json()
        assert data["passed"] is True
        assert data["outputs"]["measured"]["compute"]["CNOT"] == 42
        assert data["outputs"]["measured"]["compute"]["CCNOT"] == 24

    def test_unknown_group(self, client: FlaskClient) -> None:
        """Test that only su2 and su3 are accepted"""
        response = client.get("/resources/su5/4")
        assert response.status_code == 400
        assert "group" in response.get_json()["message"]

    def test_single_particle(self, client: FlaskClient) -> None:
        """Test that one particle has no circuit"""
        assert client.get("/resources/su3/1").status_code == 400

    def test_too_many_particles(self, client: FlaskClient) -> None:
        """Test the request size limit"""
        response = client.get(f"/resources/su2/{routes.MAX_RESOURCE_PARTICLES + 1}")
        assert response.status_code == 400

    def test_isoscalars(self, client: FlaskClient) -> None:
        """Test the isoscalar table of the quark irrep"""
        response = client.get("/isoscalars/1/0")
        assert response.status_code == 200
        data = response.get_json()
        assert data["passed"] is True
        assert data["outputs"]["count"] == len(data["outputs"]["entries"]) > 0
        assert {entry["channel"] for entry in data["outputs"]["entries"]} <= {"sigma", "rho", "strange"}
