"""Prints a one-line verdict per acceptance criterion after the run."""

ACCEPTANCE_LABELS = {
    "test_core_walkthrough": "Core walkthrough (register/validate/compose/conform/generate)",
    "test_trade_date_suite": "Trade-date suite (3 ISO forms + >=12 corrupted variants)",
    "test_equivalence_law_10k_pairs": "Equivalence law (validate <=> conform <=> explain, 10k pairs)",
    "test_gen_validate_soundness": "Gen->validate soundness (1000 seeds x every bundle spec)",
    "test_cnl_round_trip": "CNL round-trip (1000 random docs + shipped file)",
    "test_soundness_mutation_kill_rate": "Soundness mutation kill-rate (>=50 mutants, 100%)",
    "test_performance_thresholds": "Performance (validation <=1ms, generation <=50ms, ordering, throughput)",
    "test_cli_exit_code_contract": "CLI contract (exit codes 0/1/2)",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" not in getattr(report, "nodeid", ""):
                continue
            name = report.nodeid.split("::")[-1]
            label = ACCEPTANCE_LABELS.get(name)
            if label is None:
                continue
            verdict = "PASS" if outcome == "passed" else "FAIL"
            lines.append((label, verdict))
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for label, verdict in lines:
        terminalreporter.write_line(f"{verdict}  {label}")
