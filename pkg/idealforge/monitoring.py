"""
Structured logging and run metrics

Every log line carries the run id of the suite (or command) it belongs to
and an optional context dict. Metrics are process-wide: Buchberger
statistics, check outcomes and the timings of decorated operations.
Diagnostics go to stderr; stdout is left to the CLI's data.
"""
import logging
import statistics
import threading
import time
import uuid
from collections import defaultdict, deque
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from datetime import datetime
from functools import wraps
from typing import Any, Callable, Deque, Dict, List, Optional

from .config import config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - [%(run_id)s] %(message)s'

Labels = Optional[Dict[str, str]]


@dataclass
class LogRecord:
    """One structured log event, kept for inspection"""
    timestamp: datetime
    level: str
    message: str
    module: str
    run_id: Optional[str]
    context: Dict[str, Any] = field(default_factory=dict)
    duration_ms: Optional[float] = None


class CorrelationContext:
    """Run id of the current thread"""
    _local = threading.local()

    @classmethod
    def set_correlation_id(cls, run_id: str):
        cls._local.run_id = run_id

    @classmethod
    def get_correlation_id(cls) -> Optional[str]:
        return getattr(cls._local, 'run_id', None)

    @classmethod
    def clear(cls):
        cls._local.__dict__.pop('run_id', None)


def _key(name: str, labels: Labels) -> str:
    if not labels:
        return name
    return name + '{' + ','.join(f'{k}={v}' for k, v in sorted(labels.items())) + '}'


class MetricsCollector:
    """Counters, last values and bounded timing series, keyed by name and labels"""

    def __init__(self, max_samples: int = 1000):
        self.max_samples = max_samples
        self.counters: Dict[str, float] = defaultdict(float)
        self.last_values: Dict[str, float] = {}
        self.timings: Dict[str, Deque[float]] = {}
        self._lock = threading.Lock()

    def record_counter(self, name: str, value: float = 1.0, labels: Labels = None):
        with self._lock:
            self.counters[_key(name, labels)] += value

    def record_value(self, name: str, value: float, labels: Labels = None):
        with self._lock:
            self.last_values[_key(name, labels)] = value

    def record_timing(self, name: str, duration_ms: float, labels: Labels = None):
        with self._lock:
            key = _key(name, labels)
            if key not in self.timings:
                self.timings[key] = deque(maxlen=self.max_samples)
            self.timings[key].append(duration_ms)

    def get_counter(self, name: str, labels: Labels = None) -> float:
        return self.counters.get(_key(name, labels), 0.0)

    def get_timing_stats(self, name: str, labels: Labels = None) -> Dict[str, float]:
        with self._lock:
            values = list(self.timings.get(_key(name, labels), ()))
        if not values:
            return {}
        return {
            'count': len(values),
            'min_ms': min(values),
            'max_ms': max(values),
            'mean_ms': statistics.mean(values),
            'median_ms': statistics.median(values),
        }


class StructuredLogger:
    """stdlib logger plus a context dict per event and a short in-memory history"""

    def __init__(self, name: str, metrics: MetricsCollector, history: int = 1000):
        self.name = name
        self.metrics = metrics
        self.records: Deque[LogRecord] = deque(maxlen=history)
        self.logger = logging.getLogger(name)
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter(LOG_FORMAT))
            self.logger.addHandler(handler)
            self.logger.setLevel(getattr(logging, config.log_level, logging.WARNING))
            self.logger.propagate = False

    def _log(self, level: str, message: str, context: Optional[Dict[str, Any]] = None,
             duration_ms: Optional[float] = None):
        run_id = CorrelationContext.get_correlation_id()
        self.records.append(LogRecord(datetime.now(), level, message, self.name, run_id,
                                      dict(context or {}), duration_ms))
        text = f"{message} {context}" if context else message
        self.logger.log(getattr(logging, level), text, extra={'run_id': run_id or '-'})
        self.metrics.record_counter('log_events_total', labels={'level': level})

    def info(self, message: str, context: Optional[Dict[str, Any]] = None, **kwargs):
        self._log('INFO', message, context, kwargs.get('duration_ms'))

    def warning(self, message: str, context: Optional[Dict[str, Any]] = None, **kwargs):
        self._log('WARNING', message, context, kwargs.get('duration_ms'))

    def error(self, message: str, context: Optional[Dict[str, Any]] = None, **kwargs):
        self._log('ERROR', message, context, kwargs.get('duration_ms'))

    def debug(self, message: str, context: Optional[Dict[str, Any]] = None, **kwargs):
        self._log('DEBUG', message, context, kwargs.get('duration_ms'))

    def get_recent_logs(self, limit: int = 100, level: Optional[str] = None) -> List[Dict[str, Any]]:
        """Newest first, optionally filtered by level"""
        records = [r for r in reversed(self.records) if level is None or r.level == level.upper()]
        return [asdict(r) for r in records[:limit]]


class MonitoringSystem:
    """Loggers and metrics shared by the whole process"""

    def __init__(self):
        self.metrics = MetricsCollector()
        self.loggers: Dict[str, StructuredLogger] = {}
        self.started = time.perf_counter()
        self._lock = threading.Lock()

    def get_logger(self, name: str) -> StructuredLogger:
        with self._lock:
            if name not in self.loggers:
                self.loggers[name] = StructuredLogger(name, self.metrics)
            return self.loggers[name]

    def record_groebner_run(self, variables: int, basis_size: int, reduced_pairs: int,
                            pruned_pairs: int, duration_ms: float):
        """One Buchberger invocation"""
        self.metrics.record_counter('groebner_runs_total')
        self.metrics.record_counter('spairs_reduced_total', reduced_pairs)
        self.metrics.record_counter('spairs_pruned_total', pruned_pairs)
        self.metrics.record_value('last_basis_size', float(basis_size), {'variables': str(variables)})
        self.metrics.record_timing('groebner_duration_ms', duration_ms)

    def record_check(self, check_id: str, status: str, duration_ms: float):
        self.metrics.record_counter('checks_total', labels={'status': status})
        self.metrics.record_timing('check_duration_ms', duration_ms, {'check': check_id})

    def groebner_summary(self) -> Dict[str, Any]:
        """Totals of the Gröbner work done so far in this process"""
        return {
            'runs': self.metrics.get_counter('groebner_runs_total'),
            'spairs_reduced': self.metrics.get_counter('spairs_reduced_total'),
            'spairs_pruned': self.metrics.get_counter('spairs_pruned_total'),
            'timing': self.metrics.get_timing_stats('groebner_duration_ms'),
            'uptime_s': round(time.perf_counter() - self.started, 3),
        }


# Global monitoring instance
monitoring = MonitoringSystem()


def monitor_execution(operation_type: str):
    """Time a function under '<operation_type>_duration_ms'; count and log its failures"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = monitoring.get_logger(func.__module__)
            labels = {'function': func.__name__}
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed = (time.perf_counter() - start) * 1000
                logger.warning(f"{operation_type} {func.__name__} failed: {e}",
                               context={'duration_ms': round(elapsed, 3)}, duration_ms=elapsed)
                monitoring.metrics.record_counter(f'{operation_type}_errors_total', labels=labels)
                raise
            elapsed = (time.perf_counter() - start) * 1000
            monitoring.metrics.record_timing(f'{operation_type}_duration_ms', elapsed, labels)
            return result
        return wrapper
    return decorator


@contextmanager
def correlation_context(correlation_id: Optional[str] = None):
    """Bind a run id (a fresh uuid4 unless given) to the current thread; restore the previous one on exit"""
    previous = CorrelationContext.get_correlation_id()
    run_id = correlation_id or str(uuid.uuid4())
    CorrelationContext.set_correlation_id(run_id)
    try:
        yield run_id
    finally:
        if previous is None:
            CorrelationContext.clear()
        else:
            CorrelationContext.set_correlation_id(previous)
