import json
import logging
import time
from typing import Optional, Tuple

from flask import Blueprint, Response, jsonify, request

from app.circuits.resources import compare_resources
from app.domain.schur_label import group_dimension, parse_label
from app.errors import SchurSynthError
from app.reports.report_factory import ReportFactory
from app.services.isoscalars import isoscalar_table
from app.services.verification import VerificationService, decompose

bp = Blueprint("routes", __name__)
logger = logging.getLogger("schur_synth")

VERSION = "0.1.0"
MAX_RESOURCE_PARTICLES = 256

# We'll inject the service in __init__.py
verification_service: Optional[VerificationService] = None


def init_routes(service: VerificationService) -> Blueprint:
    global verification_service
    verification_service = service
    return bp


def _error(message: str, status_code: int) -> Tuple[Response, int]:
    return jsonify({"status": "error", "message": message}), status_code


@bp.errorhandler(SchurSynthError)
def handle_domain_error(e: SchurSynthError) -> Tuple[Response, int]:
    logger.debug(f"Rejected request: {e}")
    return _error(str(e), 400)


@bp.route("/health", methods=["GET"])
def health_check() -> Tuple[Response, int]:
    """Health check endpoint"""
    if verification_service is None:
        return _error("Service not initialized", 500)
    return jsonify({"status": "ok", "version": VERSION}), 200


@bp.route("/decompose", methods=["POST"])
def decompose_label() -> Tuple[Response, int]:
    """Exact qudit superposition of a Schur label"""
    payload = request.get_json(silent=True)
    logger.debug(f"Received decompose payload: {json.dumps(payload) if payload else 'None'}")
    if not isinstance(payload, dict) or not isinstance(payload.get("label"), str):
        return _error("expected a JSON object with a string field 'label'", 400)

    try:
        started = time.monotonic()
        label = parse_label(payload["label"])
        amplitudes = decompose(label)
        report = ReportFactory.create_amplitude_report("decompose", label, amplitudes, time.monotonic() - started)
        return jsonify(report.to_dict()), 200
    except SchurSynthError:
        raise
    except Exception as e:
        logger.error(f"Error decomposing {payload['label']!r}: {str(e)}")
        return _error(str(e), 500)


@bp.route("/resources/<group>/<int:n>", methods=["GET"])
def resources(group: str, n: int) -> Tuple[Response, int]:
    """Measured against predicted gate counts of the synthesized circuit"""
    group_dimension(group)
    if n > MAX_RESOURCE_PARTICLES:
        return _error(f"n must be at most {MAX_RESOURCE_PARTICLES}, got {n}", 400)
    started = time.monotonic()
    comparison = compare_resources(group, n)
    report = ReportFactory.create_resource_report(comparison, time.monotonic() - started)
    return jsonify(report.to_dict()), 200


@bp.route("/isoscalars/<int:P1>/<int:Q1>", methods=["GET"])
def isoscalars(P1: int, Q1: int) -> Tuple[Response, int]:
    """Isoscalar factors of (P1, Q1) x quark"""
    started = time.monotonic()
    entries = isoscalar_table(P1, Q1)
    report = ReportFactory.create_isoscalar_report(P1, Q1, entries, time.monotonic() - started)
    return jsonify(report.to_dict()), 200


@bp.route("/", methods=["GET"])
def root() -> Tuple[Response, int]:
    """Root endpoint for service information"""
    return jsonify(
        {
            "service": "Schur transform synthesis",
            "version": VERSION,
            "status": "running",
            "endpoints": [
                {
                    "path": "/health",
                    "method": "GET",
                    "description": "Health check endpoint",
                },
                {
                    "path": "/decompose",
                    "method": "POST",
                    "description": "Qudit superposition of a Schur label",
                },
                {
                    "path": "/resources/<group>/<n>",
                    "method": "GET",
                    "description": "Measured and predicted gate counts",
                },
                {
                    "path": "/isoscalars/<P1>/<Q1>",
                    "method": "GET",
                    "description": "Isoscalar factor table of a parent irrep",
                },
            ],
        }
    ), 200
