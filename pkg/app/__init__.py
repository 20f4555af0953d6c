import logging

from flask import Flask

from app.config import Config
from app.logging_setup import configure_global_logging
from app.services.verification import VerificationService
from app.web.routes import init_routes


def create_app() -> Flask:
    """Application factory"""
    # Initialize configuration
    config = Config.get_instance()
    configure_global_logging()
    logger = logging.getLogger("schur_synth")

    # Shared service keeps the synthesized circuits cached between requests
    verification_service = VerificationService.get_instance(config)

    # Create Flask application
    app = Flask(__name__)

    # Register routes
    app.register_blueprint(init_routes(verification_service))

    logger.info(
        f"Starting Schur synthesis API (mode: {config.simulation_mode}, workers: {config.max_workers}, "
        f"oracle tolerance: {config.oracle_tolerance})"
    )

    return app
