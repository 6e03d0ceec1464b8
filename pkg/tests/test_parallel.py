"""
Tests para la configuración de entorno y el pool de workers
"""

import os

import pytest

from src.config import Settings
from src.core.parallel import index_chunks, map_ordered, resolve_workers
from src.errors import ConfigurationException
from src.utils.logging import resolve_level


class TestSettings:
    """Tests para Settings.from_env"""

    def test_explicit_threads(self, monkeypatch):
        """Test: El valor explícito gana a DIMEST_THREADS"""
        monkeypatch.setenv("DIMEST_THREADS", "3")
        assert Settings.from_env(threads=5).threads == 5

    def test_env_threads(self, monkeypatch):
        """Test: DIMEST_THREADS como respaldo"""
        monkeypatch.setenv("DIMEST_THREADS", "3")
        assert resolve_workers() == 3

    def test_default_cpu_count(self, monkeypatch):
        """Test: Sin valor explícito ni entorno se usan los núcleos"""
        monkeypatch.delenv("DIMEST_THREADS", raising=False)
        assert resolve_workers() == (os.cpu_count() or 1)

    def test_zero_threads(self):
        """Test: threads < 1 es inválido"""
        with pytest.raises(ConfigurationException):
            Settings.from_env(threads=0)

    def test_log_level(self, monkeypatch):
        """Test: Nivel de log normalizado y validado"""
        monkeypatch.setenv("DIMEST_LOG_LEVEL", "info")
        assert Settings.from_env().log_level == "INFO"
        monkeypatch.setenv("DIMEST_LOG_LEVEL", "verbose")
        with pytest.raises(ConfigurationException):
            Settings.from_env()

    def test_non_integer_threads(self, monkeypatch):
        """Test: DIMEST_THREADS no entero es un error de configuración"""
        monkeypatch.setenv("DIMEST_THREADS", "abc")
        with pytest.raises(ConfigurationException):
            resolve_workers()

    def test_logger_level_from_settings(self, monkeypatch):
        """Test: El nivel inicial del logger sale de Settings"""
        monkeypatch.setenv("DIMEST_LOG_LEVEL", "debug")
        assert resolve_level() == "DEBUG"

    def test_logger_invalid_level_falls_back(self, monkeypatch):
        """Test: Un nivel inválido no rompe la importación y usa WARNING"""
        monkeypatch.setenv("DIMEST_LOG_LEVEL", "verbose")
        assert resolve_level() == "WARNING"


class TestParallel:
    """Tests para map_ordered e index_chunks"""

    def test_map_ordered_keeps_order(self):
        """Test: El orden de salida es el de entrada"""
        assert map_ordered(lambda x: x * x, range(100), workers=8) == [x * x for x in range(100)]

    def test_map_ordered_single_worker(self):
        """Test: workers = 1 ejecuta en secuencia"""
        assert map_ordered(str, [3, 1, 2], workers=1) == ["3", "1", "2"]

    def test_index_chunks_cover(self):
        """Test: Los bloques cubren 0..n-1 en orden y sin vacíos"""
        chunks = index_chunks(10, 3)
        assert [c.tolist() for c in chunks] == [[0, 1, 2, 3], [4, 5, 6], [7, 8, 9]]

    def test_index_chunks_more_workers_than_items(self):
        """Test: Nunca hay más bloques que items"""
        chunks = index_chunks(2, 8)
        assert len(chunks) == 2
