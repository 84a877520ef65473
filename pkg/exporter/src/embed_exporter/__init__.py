"""Offline token-embedding exporter for the summarization scoring toolkit."""

__version__ = "0.1.0"

from embed_exporter.exporter import ExportConfig, export, read_texts, verify_store

__all__ = ["ExportConfig", "export", "read_texts", "verify_store", "__version__"]
