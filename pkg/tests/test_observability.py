from observability import metrics


def test_metrics_snapshot_counts_outcomes():
    metrics.reset()
    start = metrics.record_query_start()
    metrics.record_outcome("pass")
    metrics.record_outcome("fail")
    metrics.record_outcome("error")
    metrics.record_sweeps(3)
    assert metrics.record_query_end(start) >= 0.0

    snapshot = metrics.snapshot()
    assert (snapshot["passed"], snapshot["failed"], snapshot["errored"]) == (1, 1, 1)
    assert snapshot["total_queries"] == 1
    assert snapshot["jacobi_sweeps"] == 3
