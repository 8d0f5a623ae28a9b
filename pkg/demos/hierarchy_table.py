"""Every bound the package knows, for the bundled worked examples."""

from apolar_rank.hierarchy import corpus_run, load_corpus

cols = ["r_H", "r_ext_upper", "r_border_upper", "sch_lower", "r_exact", "r_upper"]
print(f"{'':<36}" + "".join(f"{c:>15}" for c in cols))
for res in corpus_run(load_corpus()):
    js = res.report.to_json()
    cells = "".join(f"{'-' if js[c] is None else js[c]!s:>15}" for c in cols)
    print(f"{res.name:<36}{cells}   {'ok' if res.ok else 'MISMATCH'}")
