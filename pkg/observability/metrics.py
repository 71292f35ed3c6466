import threading
import time

# In-process counters for logging; queries may run on worker threads.
_lock = threading.Lock()
_total_queries = 0
_passed = 0
_failed = 0
_errored = 0
_total_query_time = 0.0
_jacobi_sweeps = 0


def record_query_start() -> float:
    return time.perf_counter()


def record_query_end(start_time: float) -> float:
    global _total_queries, _total_query_time
    elapsed = time.perf_counter() - start_time
    with _lock:
        _total_queries += 1
        _total_query_time += elapsed
    return elapsed


def record_outcome(status: str):
    global _passed, _failed, _errored
    with _lock:
        if status == "pass":
            _passed += 1
        elif status == "fail":
            _failed += 1
        else:
            _errored += 1


def record_sweeps(count: int):
    global _jacobi_sweeps
    with _lock:
        _jacobi_sweeps += count


def reset():
    global _total_queries, _passed, _failed, _errored, _total_query_time, _jacobi_sweeps
    with _lock:
        _total_queries = _passed = _failed = _errored = _jacobi_sweeps = 0
        _total_query_time = 0.0


def snapshot():
    """
    Returns a snapshot of current metrics for debugging/logging.
    """
    with _lock:
        avg_time = _total_query_time / _total_queries if _total_queries else 0.0
        return {
            "total_queries": _total_queries,
            "passed": _passed,
            "failed": _failed,
            "errored": _errored,
            "avg_time_per_query_sec": avg_time,
            "jacobi_sweeps": _jacobi_sweeps,
        }
