"""One test per acceptance criterion.

Each test prints a single ``PASS``/``FAIL`` line; the lines are repeated
in the pytest terminal summary.
"""

import itertools
import random
import subprocess
import sys
import time
from pathlib import Path

import hierarchy_oracle as oracle
from conftest import ACCEPTANCE_LINES
from snacs import schema
from snacs.construal import Construal, ConstructionContext as Ctx, check, validate
from snacs.corpus_io import Corpus, Mode, Sentence, make_record, parse_corpus, read_corpus, serialize_corpus
from snacs.examplebank import default_bank, role_coverage
from snacs.metrics import score
from snacs.schema import MigrationStatus, SpecialLabel
from snacs.tagger import leave_one_out, predict, train

FIXTURES = Path(__file__).parent / "fixtures"

# timing budget for the schema criteria, in seconds
TIME_LIMIT = 1.0
FLOAT_TOL = 1e-12


def report(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_schema_cardinality():
    script = (
        "from snacs import schema\n"
        "sizes = sorted((r.name, 1 + len(schema.descendants(r))) for r in schema.ROOTS)\n"
        "abstract = sorted(s.name for s in schema.SUPERSENSES if s.abstract)\n"
        "print(len(schema.SUPERSENSES), sizes, abstract)\n"
    )
    t0 = time.perf_counter()
    out = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, check=True).stdout
    elapsed = time.perf_counter() - t0
    want = "50 [('Circumstance', 18), ('Configuration', 18), ('Participant', 14)] " \
           "['Configuration', 'Participant', 'Temporal']\n"
    report("schema cardinality", out == want and elapsed < TIME_LIMIT,
           f"{out.strip()} in {elapsed:.3f}s (fresh interpreter)")


def test_lca_oracle_equivalence():
    t0 = time.perf_counter()
    pairs = list(itertools.product(schema.SUPERSENSES, repeat=2))
    mismatches = 0
    props_ok = True
    for a, b in pairs:
        got = schema.lca(a, b)
        wp = schema.wu_palmer(a, b)
        if (got.name if got else None) != oracle.lca(a.name, b.name):
            mismatches += 1
        if abs(wp - oracle.wu_palmer(a.name, b.name)) > FLOAT_TOL:
            mismatches += 1
        if not (0.0 <= wp <= 1.0) or wp != schema.wu_palmer(b, a) or ((wp == 1.0) != (a is b)):
            props_ok = False
    elapsed = time.perf_counter() - t0
    report("LCA oracle equivalence", len(pairs) == 2500 and mismatches == 0 and props_ok and elapsed < TIME_LIMIT,
           f"{len(pairs)} pairs, {mismatches} mismatches, properties {'hold' if props_ok else 'violated'}, "
           f"{elapsed:.3f}s")


def test_positive_suite():
    bank = default_bank()
    failures = [e for e in bank.entries if not validate(e.label, e.ctx, bank).ok]
    cov = role_coverage(bank)
    uncovered = [s.name for s in schema.SUPERSENSES if not s.abstract and cov[s] == 0]
    report("positive suite", len(bank) >= 120 and not failures and not uncovered,
           f"{len(bank)} entries, {len(failures)} failures, {len(uncovered)} uncovered roles")


def _negative_cases():
    lines = (FIXTURES / "negative_cases.tsv").read_text(encoding="utf-8").splitlines()
    for line in lines[1:]:
        role, func, ctx, expected = line.split("\t")
        yield role, func, ctx, expected.split()


def test_negative_suite():
    cases = list(_negative_cases())
    wrong = []
    for role, func, ctx, expected in cases:
        text = ("# sent_id = n1\n1\tw\n\n# annotations\n"
                f"n1\t1:1\tw\t{role}\t{func}\t{ctx}\n")
        _, diags = parse_corpus(text, Mode.LENIENT)
        got = [d.code for d in diags]
        if got != expected:
            wrong.append((role, func, ctx, expected, got))

    # coverage of the required classes
    pairs = {(r, f) for r, f, c, _ in cases}
    ctxs = {c for _, _, c, e in cases if "E_CONSTRUCTION_MISMATCH" in e}
    forbidden = {"Experiencer", "Stimulus", "Originator", "Recipient", "SocialRel", "OrgRole"}
    temporal = {"Time", "StartTime", "EndTime", "Frequency", "Duration", "Interval"}
    covered = (all(any(f == "p." + n for _, f in pairs) for n in forbidden)
               and all(("p." + t, "p." + f) in pairs for t in temporal for f in ("Locus", "Path", "Extent"))
               and {"SGenitive", "PassiveBy", "AsComparativeFirst", "InfinitivalTo"} <= ctxs)
    detected = len(cases) - len(wrong)
    report("negative suite", len(cases) >= 25 and covered and not wrong,
           f"{detected}/{len(cases)} cases with exactly the expected codes; required classes "
           f"{'covered' if covered else 'missing'}" + (f"; first wrong: {wrong[0]}" if wrong else ""))


def test_round_trip():
    sample = FIXTURES / "sample_corpus.tsv"
    text = sample.read_text(encoding="utf-8")
    corpus, diags = read_corpus(sample)
    identical = serialize_corpus(corpus) == text and len(corpus.sentences) == 50 and not diags

    bad, bad_diags = read_corpus(FIXTURES / "corrupted_corpus.tsv", Mode.LENIENT)
    want = [(r.line, v.code, v.message) for r in bad.records for v in check(r.label, r.ctx)]
    got = [(d.line, d.code, d.message) for d in bad_diags if d.code != "E_UNKNOWN_LABEL"]
    unknown = [d for d in bad_diags if d.code == "E_UNKNOWN_LABEL"]
    match = got == want and len(want) > 0 and len(unknown) == 1
    report("round trip", identical and match,
           f"50-sentence sample {'byte-identical' if identical else 'differs'}; "
           f"{len(got)} lenient diagnostics vs {len(want)} from the per-record validator "
           f"({'equal' if got == want else 'different'}), {len(unknown)} unknown-label record")


def _random_valid_corpus(rng, valid):
    sentences, records = [], []
    for k in range(rng.randint(1, 10)):
        sent = Sentence(f"r{k}", tuple(f"w{i}" for i in range(rng.randint(1, 8))))
        sentences.append(sent)
        for i in range(1, len(sent) + 1):
            if rng.random() < 0.6:
                ctx = rng.choice(list(Ctx))
                records.append(make_record(sent, i, i, "x", rng.choice(valid[ctx]), ctx))
    if not records:
        records.append(make_record(sentences[0], 1, 1, "x", rng.choice(valid[Ctx.NONE])))
    return Corpus(tuple(sentences), tuple(records))


def test_metrics_sanity():
    labels = [Construal(a, b) for a in schema.SUPERSENSES for b in schema.SUPERSENSES] + list(SpecialLabel)
    valid = {ctx: [lab for lab in labels if not check(lab, ctx)] for ctx in Ctx}
    rng = random.Random(20180)
    perfect = 0
    for _ in range(100):
        c = _random_valid_corpus(rng, valid)
        r = score(c, c)
        perfect += (r.role_acc, r.func_acc, r.full_acc, r.role_wp, r.func_wp, r.ident_f) == (1.0,) * 6

    gold, _ = read_corpus(FIXTURES / "toy_gold.tsv")
    pred, _ = read_corpus(FIXTURES / "toy_pred.tsv")
    toy = score(gold, pred)
    toy_ok = (abs(toy.ident_p - 1.0) <= FLOAT_TOL and abs(toy.ident_r - 2 / 3) <= FLOAT_TOL
              and abs(toy.ident_f - 0.8) <= FLOAT_TOL)

    sent = Sentence("s", ("since",))
    st = score(Corpus((sent,), (make_record(sent, 1, 1, "since", Construal.of("StartTime")),)),
               Corpus((sent,), (make_record(sent, 1, 1, "since", Construal.of("EndTime")),)))
    wp_ok = abs(st.role_wp - 0.75) <= FLOAT_TOL and st.full_acc == 0.0

    report("metrics sanity", perfect == 100 and toy_ok and wp_ok,
           f"score(c,c)=1.0 on {perfect}/100 random corpora; toy ident_p={toy.ident_p:.4f} "
           f"ident_r={toy.ident_r:.4f} ident_f={toy.ident_f:.4f}; StartTime/EndTime role_wp={st.role_wp:.4f}")


def test_tagger_soundness():
    bank = default_bank()
    model = train(bank)
    invalid = [(lemma, ctx) for lemma in bank.lemmas() for ctx in Ctx
               if check(predict(model, lemma, ctx), ctx)]
    n_checked = len(bank.lemmas()) * len(Ctx)
    first, _, _ = leave_one_out(bank)
    second, _, _ = leave_one_out(bank)
    same = first.to_machine() == second.to_machine()
    report("tagger soundness", not invalid and same,
           f"{n_checked - len(invalid)}/{n_checked} lemma-context predictions valid; leave-one-out "
           f"full_acc={first.full_acc:.4f} role_acc={first.role_acc:.4f} func_acc={first.func_acc:.4f} "
           f"over {first.n_gold} entries; reruns {'identical' if same else 'differ'}")


# every v1 name with a recorded v2 successor or removal
HISTORY_V1_NAMES = [
    "Age", "Attribute", "RelativeTime", "DeicticTime", "ClockTimeCxn",
    "Traversed", "1DTrajectory", "2DArea", "3DMedium", "Contour", "Via", "Transit", "Course",
    "Function", "Patient", "Co-Patient", "Co-Participant", "Donor/Speaker", "Creator",
    "InitialLocation", "Location", "Destination", "Value", "Asset", "Instance",
    "Superset", "Elements", "Comparison/Contrast", "ProfessionalAspect",
]


def test_migration_ledger():
    unresolved = []
    for name in HISTORY_V1_NAMES:
        try:
            if schema.migrate_v1(name).status not in (MigrationStatus.MAPS_TO, MigrationStatus.REMOVED):
                unresolved.append(name)
        except Exception:
            unresolved.append(name)
    spot = {"Patient": "Theme", "DeicticTime": "Interval", "Material": "Source", "ProfessionalAspect": "SocialRel"}
    bad_spot = [n for n, t in spot.items() if [x.name for x in schema.migrate_v1(n).targets] != [t]]
    report("migration ledger", not unresolved and not bad_spot,
           f"{len(HISTORY_V1_NAMES) - len(unresolved)}/{len(HISTORY_V1_NAMES)} v1 names resolve; "
           f"{len(spot) - len(bad_spot)}/{len(spot)} spot checks pass")
