#!/usr/bin/env python3
"""Regenerates golden/ from first principles.

Independent oracle for the audited tables and the worked value chain: subsets
of the two-element domain {u, v} are modeled as frozensets, the base tables
are written out directly, and the universal-quantifier table is obtained by
composing negation, the existential table and negation again. Run from the
repository root:

    python3 tests/golden_oracle.py
"""

import os

U, V = "u", "v"
A = frozenset({U, V})
EMPTY = frozenset()
ONLY_U = frozenset({U})
ONLY_V = frozenset({V})

# Display order used by the audit: A, {u}, {v}, {}.
ORDER = [A, ONLY_U, ONLY_V, EMPTY]
SENTENCE_VALUES = [A, EMPTY]  # values a closed formula can take

NEG = {A: EMPTY, ONLY_U: EMPTY, ONLY_V: ONLY_U, EMPTY: ONLY_U}
EX = {A: A, ONLY_U: A, ONLY_V: A, EMPTY: EMPTY}


def imp(x, y):
    """Pointwise classical implication on subsets."""
    return (A - x) | y


def forall(x):
    return NEG[EX[NEG[x]]]


def show(s):
    if not s:
        return "{}"
    return "{" + ",".join(e for e in [U, V] if e in s) + "}"


def a4_text():
    lines = ["A4: ->(forall(X), X)"]
    for x in ORDER:
        lines.append(
            f"X={show(x)}: forall(X)={show(forall(x))}, value={show(imp(forall(x), x))}"
        )
    return "\n".join(lines) + "\n"


def a5_text():
    """Four blocks separated by blank lines; the full audit output is
    a4_text() + a blank line + this."""
    lines = []

    def block(title, cell):
        if lines:
            lines.append("")
        lines.append(title)
        for f in SENTENCE_VALUES:
            row = f"F={show(f)}:"
            for x in ORDER:
                row += f" P={show(x)}:{show(cell(f, x))}"
            lines.append(row)

    block("A5 step 1: IMP = ->(F, P), F a sentence value", lambda f, x: imp(f, x))
    block("A5 step 2: S0 = forall(IMP)", lambda f, x: forall(imp(f, x)))
    block("A5 step 3: S1 = ->(F, forall(P))", lambda f, x: imp(f, forall(x)))
    block(
        "A5 final: ->(S0, S1)",
        lambda f, x: imp(forall(imp(f, x)), imp(f, forall(x))),
    )
    return "\n".join(lines) + "\n"


def chain_text():
    """(exists x1. P(x1)) -> exists x1. ~~P(x1) with P interpreted as {v},
    reduced innermost-first, all redexes at once."""
    p = ONLY_V
    lines = []
    lines.append(f"->(exists({show(p)}), exists(~(~({show(p)}))))")
    left = EX[p]
    n1 = NEG[p]
    lines.append(f"= ->({show(left)}, exists(~({show(n1)})))")
    n2 = NEG[n1]
    lines.append(f"= ->({show(left)}, exists({show(n2)}))")
    ex2 = EX[n2]
    lines.append(f"= ->({show(left)}, {show(ex2)})")
    lines.append(f"= {show(imp(left, ex2))}")
    return "\n".join(lines) + "\n"


def main():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    golden = os.path.join(root, "golden")
    os.makedirs(golden, exist_ok=True)
    with open(os.path.join(golden, "a4_table.golden"), "w") as f:
        f.write(a4_text())
    with open(os.path.join(golden, "a5_tables.golden"), "w") as f:
        f.write(a5_text())
    with open(os.path.join(golden, "prop1_chain.golden"), "w") as f:
        f.write(chain_text())
    print("wrote", golden)


if __name__ == "__main__":
    main()
