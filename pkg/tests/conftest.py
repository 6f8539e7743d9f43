from fractions import Fraction

import hypothesis
from hypothesis import strategies as st

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.load_profile("default")

bit_words = st.text(alphabet="01", max_size=12)
positive_rationals = st.builds(Fraction, st.integers(1, 10**6), st.integers(1, 10**4))
nonneg_rationals = st.builds(Fraction, st.integers(0, 10**6), st.integers(1, 10**4))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(results):
        clauses = results[criterion]
        failed = [(c, d) for c, ok, d in clauses if not ok]
        if failed:
            detail = "; ".join(f"{c}: {d}" for c, d in failed)
            terminalreporter.write_line(f"criterion {criterion}: FAIL ({len(clauses) - len(failed)}/{len(clauses)} clauses pass; {detail})")
        else:
            terminalreporter.write_line(f"criterion {criterion}: PASS ({len(clauses)} clauses)")
