from .app import ExperimentInfo, ExperimentRequest, ReportView, app, create_app

__all__ = ["ExperimentInfo", "ExperimentRequest", "ReportView", "app", "create_app"]
