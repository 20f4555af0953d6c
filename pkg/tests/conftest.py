import os
from typing import Generator
from unittest.mock import patch

import pytest
from flask import Flask
from flask.testing import FlaskClient

from app.config import Config
from app.services.verification import VerificationService


@pytest.fixture
def mock_config() -> Generator[Config, None, None]:
    """Fresh configuration with deterministic defaults"""
    Config._instance = None
    with patch.dict(os.environ, {"SCHUR_SYNTH_THREADS": "2", "SCHUR_SYNTH_MODE": "exact"}):
        config = Config.get_instance()
    yield config
    Config._instance = None


@pytest.fixture
def service(mock_config: Config) -> Generator[VerificationService, None, None]:
    """Verification service bound to the mock config"""
    VerificationService._instance = None
    yield VerificationService.get_instance(mock_config)
    VerificationService._instance = None


@pytest.fixture
def app(service: VerificationService) -> Generator[Flask, None, None]:
    """Flask application fixture"""
    from app.web.routes import init_routes

    app = Flask(__name__)
    app.register_blueprint(init_routes(service))
    app.config["TESTING"] = True
    yield app


@pytest.fixture
def client(app: Flask) -> FlaskClient:
    """Flask test client fixture"""
    return app.test_client()
