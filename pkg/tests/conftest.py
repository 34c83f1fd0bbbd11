def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num].line())
    passed = sum(r.passed for r in RESULTS.values())
    terminalreporter.write_line(f"{passed}/{len(RESULTS)} criteria passed")
