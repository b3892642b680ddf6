"""Command-line entry point: ``ctxspell <subcommand> [options]``.

Settings come from a YAML config (``--config`` or ``$CTXSPELL_CONFIG``);
command-line flags override it. Relative paths in the config are resolved
against the config file's directory.

Exit codes: 0 success, 1 pipeline failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import glob
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .antispell import DEFAULT_RATE, antispell, apply_ledger, classify_errors, dump_ledger, load_ledger
from .candidates import apply_h1, propose
from .combiner import CombinationError, combine, parse_combination
from .corpus import SPLITS, WORD, Corpus, IngestError, build_document, dump_corpus, ingest_corpus
from .evaluation import (FORMATS, SCOPES, EvalReport, EvalRun, EvalScope, EvaluationError, emit_report,
                         emit_totals, prepare_cases, score, totals, weight_search)
from .guessers import GuessContext, GuesserVerdict, RuleError, load_rules
from .lexicon import LexiconError, load_lexicon

log = logging.getLogger("ctxspell")

DEFAULT_TECHNIQUES = ["random baseline", "random+H2", "CG", "CG+H2", "BF", "BF+H2", "DF", "DF+H2", "CD"]
DEFAULT_COMBINATIONS = ["CG1+DF2", "CG1+DF2+H2", "CG1+DF1+BF1", "CG1+DF1+BF1+H2"]
EXTENSIONS = {"csv": "csv", "json": "json", "table": "txt"}


class ConfigError(Exception):
    """Bad configuration or usage; exit code 2."""


class PipelineError(Exception):
    """A stage failed on valid configuration; exit code 1."""


@dataclass
class RunConfig:
    lexicon_path: Path | None = None
    rule_path: Path | None = None
    corpus_globs: dict = field(default_factory=dict)
    real_ledger: Path | None = None
    error_rate: float = DEFAULT_RATE
    seeds: list = field(default_factory=lambda: list(range(1, 9)))
    combinations: list = field(default_factory=lambda: list(DEFAULT_COMBINATIONS))
    techniques: list = field(default_factory=lambda: list(DEFAULT_TECHNIQUES))
    guessers: list = field(default_factory=lambda: ["CG", "DF", "BF"])
    weights: list = field(default_factory=lambda: [0, 1, 2])
    scopes: list = field(default_factory=lambda: ["all", "multi"])
    output_dir: Path = Path("out")
    report_format: str = "csv"
    random_seed: int = 0
    top_k: int = 5

    def validate(self):
        if not 0 < self.error_rate < 1:
            raise ConfigError(f"error_rate must be in (0, 1), got {self.error_rate}")
        if self.report_format not in FORMATS:
            raise ConfigError(f"unknown report format {self.report_format!r}")
        for scope in self.scopes:
            if scope not in SCOPES:
                raise ConfigError(f"unknown scope {scope!r}")
        for split in self.corpus_globs:
            if split not in SPLITS:
                raise ConfigError(f"unknown corpus split {split!r}")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError("seeds must be distinct")


def _resolve(base: Path, value):
    if value is None:
        return None
    p = Path(value)
    return p if p.is_absolute() else base / p


def load_config(path: Path | None, args) -> RunConfig:
    data = {}
    base = Path.cwd()
    if path is not None:
        try:
            data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"bad config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a mapping")
        base = Path(path).resolve().parent
    cfg = RunConfig()
    known = {"lexicon", "rules", "corpus", "real_ledger", "error_rate", "seeds", "combinations",
             "techniques", "guessers", "weights", "scopes", "output_dir", "report_format",
             "random_seed", "top_k"}
    extra = set(data) - known
    if extra:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
    cfg.lexicon_path = _resolve(base, data.get("lexicon"))
    cfg.rule_path = _resolve(base, data.get("rules"))
    corpus = data.get("corpus") or {}
    if isinstance(corpus, (str, list)):
        corpus = {"none": corpus}
    cfg.corpus_globs = {split: [str(_resolve(base, g)) for g in ([globs] if isinstance(globs, str) else globs)]
                        for split, globs in corpus.items()}
    cfg.real_ledger = _resolve(base, data.get("real_ledger"))
    for key in ("error_rate", "seeds", "combinations", "techniques", "guessers", "weights", "scopes",
                "report_format", "random_seed", "top_k"):
        if key in data:
            setattr(cfg, key, data[key])
    if "output_dir" in data:
        cfg.output_dir = _resolve(base, data["output_dir"])
    # flags win over the file
    if getattr(args, "seed", None):
        cfg.seeds = list(args.seed)
    if getattr(args, "rate", None) is not None:
        cfg.error_rate = args.rate
    if getattr(args, "combination", None):
        cfg.combinations = list(args.combination)
    if getattr(args, "scope", None):
        cfg.scopes = [args.scope]
    if getattr(args, "format", None):
        cfg.report_format = args.format
    if getattr(args, "out", None):
        cfg.output_dir = Path(args.out)
    if getattr(args, "lexicon", None):
        cfg.lexicon_path = Path(args.lexicon)
    if getattr(args, "rules", None):
        cfg.rule_path = Path(args.rules)
    try:
        cfg.error_rate = float(cfg.error_rate)
        cfg.seeds = [int(s) for s in cfg.seeds]
        cfg.weights = [int(w) for w in cfg.weights]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad numeric setting: {exc}") from None
    cfg.validate()
    return cfg


# --- shared loaders -----------------------------------------------------------

def _lexicon(cfg):
    if cfg.lexicon_path is None:
        raise ConfigError("no lexicon configured")
    try:
        return load_lexicon(cfg.lexicon_path)
    except OSError as exc:
        raise PipelineError(f"cannot read lexicon {cfg.lexicon_path}: {exc.strerror}") from exc
    except LexiconError as exc:
        raise PipelineError(f"{cfg.lexicon_path}: {exc}") from exc


def _rules(cfg):
    if cfg.rule_path is None:
        return ()
    try:
        return tuple(load_rules(cfg.rule_path))
    except OSError as exc:
        raise PipelineError(f"cannot read rules {cfg.rule_path}: {exc.strerror}") from exc
    except RuleError as exc:
        raise PipelineError(f"{cfg.rule_path}: {exc}") from exc


def _expand(patterns):
    paths = []
    for pat in patterns:
        paths.extend(sorted(glob.glob(pat)))
    return paths


def _corpus(cfg, splits) -> Corpus | None:
    corpus = None
    for split in splits:
        patterns = cfg.corpus_globs.get(split)
        if not patterns:
            continue
        paths = _expand(patterns)
        if not paths:
            raise ConfigError(f"corpus glob for split {split!r} matches no files: {' '.join(patterns)}")
        part = ingest_corpus(paths, split)
        corpus = part if corpus is None else corpus.merge(part)
    return corpus


ARTIFICIAL = ("train", "test", "none")


def _write(path: Path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode("utf-8")
    path.write_bytes(data)


def _ledger_path(cfg, seed):
    return cfg.output_dir / "errors" / f"ledger_seed{seed}.tsv"


# --- subcommands ----------------------------------------------------------------

def cmd_ingest(cfg, args):
    if not cfg.corpus_globs:
        raise ConfigError("no corpus configured")
    for split in cfg.corpus_globs:
        corpus = _corpus(cfg, [split])
        _write(cfg.output_dir / f"corpus_{split}.tsv", dump_corpus(corpus))
        n_sent = sum(len(d.sentences) for d in corpus.documents)
        n_tok = sum(1 for _ in corpus.tokens())
        n_word = sum(1 for t in corpus.tokens() if t.kind == WORD)
        print(f"{split}: {len(corpus)} documents, {n_sent} sentences and {n_tok} tokens ({n_word} words)")
    return 0


def cmd_gen_errors(cfg, args):
    lexicon = _lexicon(cfg)
    corpus = _corpus(cfg, ARTIFICIAL)
    if corpus is None:
        raise ConfigError("no artificial-error corpus configured (splits train/test/none)")
    if not cfg.seeds:
        raise ConfigError("no seeds configured")
    for seed in cfg.seeds:
        run = antispell(corpus, lexicon, cfg.error_rate, seed)
        _write(_ledger_path(cfg, seed), dump_ledger(run.errors))
        _write(cfg.output_dir / "errors" / f"corpus_seed{seed}.tsv", dump_corpus(run.corpus_out))
        real, non = classify_errors(run)
        print(f"seed {seed}: {len(run.errors)} errors ({real} real-word, {non} non-word)")
    return 0


def _halves(seeds):
    cut = (len(seeds) + 1) // 2
    return {"train": seeds[:cut], "test": seeds[cut:]}


def _split_runs(cfg, lexicon):
    """EvalRuns per evaluation split: first half of the seeds trains, second half tests."""
    corpus = _corpus(cfg, ARTIFICIAL)
    runs = {}
    if corpus is not None:
        for split, seeds in _halves(cfg.seeds).items():
            docs = corpus.subset((split, "none"))
            if not len(docs) or not seeds:
                continue
            keep = {d.doc_id for d in docs.documents}
            out = []
            for seed in seeds:
                path = _ledger_path(cfg, seed)
                if not path.exists():
                    raise PipelineError(f"missing ledger for seed {seed}: {path}")
                errors = tuple(e for e in load_ledger(path, lexicon) if e.at.doc_id in keep)
                out.append(EvalRun(apply_ledger(docs, errors), errors, seed))
            runs[split] = out
    if cfg.corpus_globs.get("real"):
        if cfg.real_ledger is None:
            raise ConfigError("real corpus configured without real_ledger")
        real = _corpus(cfg, ["real"])
        if not cfg.real_ledger.exists():
            raise PipelineError(f"missing real ledger {cfg.real_ledger}")
        errors = load_ledger(cfg.real_ledger, lexicon)
        for e in errors:
            if real.token(e.at).surface != e.corrupted:
                raise PipelineError(f"real ledger does not match corpus at {e.at}")
        runs["real"] = [EvalRun(real, errors, 0)]
    return runs


def _parse_all(labels):
    try:
        return [parse_combination(label) for label in labels]
    except CombinationError as exc:
        raise ConfigError(str(exc)) from None


def cmd_evaluate(cfg, args):
    lexicon, rules = _lexicon(cfg), _rules(cfg)
    combos = _parse_all(list(cfg.techniques) + list(cfg.combinations))
    guessers = sorted({g for c in combos for g in c.guessers})
    ext = EXTENSIONS[cfg.report_format]
    all_totals = {}
    for split, runs in _split_runs(cfg, lexicon).items():
        cases = prepare_cases(runs, lexicon, guessers, rules, cfg.random_seed)
        all_totals[split] = totals(cases, runs)
        for scope_name in cfg.scopes:
            scope = EvalScope.named(scope_name)
            try:
                rows = [score(cases, c, scope) for c in combos]
            except EvaluationError as exc:
                log.warning("%s/%s: %s", split, scope_name, exc)
                continue
            report = EvalReport(rows, scope, split, all_totals[split])
            path = cfg.output_dir / f"report_{split}_{scope_name}.{ext}"
            _write(path, emit_report(report, cfg.report_format))
            print(f"wrote {path}")
    if not all_totals:
        raise PipelineError("nothing to evaluate")
    _write(cfg.output_dir / "table1.txt", emit_totals(all_totals))
    sys.stdout.write(emit_totals(all_totals).decode())
    return 0


def cmd_search_weights(cfg, args):
    lexicon, rules = _lexicon(cfg), _rules(cfg)
    runs = _split_runs(cfg, lexicon)
    if not runs.get("train"):
        raise PipelineError("empty train split")
    ext = EXTENSIONS[cfg.report_format]
    train_cases = prepare_cases(runs["train"], lexicon, cfg.guessers, rules, cfg.random_seed)
    test_cases = (prepare_cases(runs["test"], lexicon, cfg.guessers, rules, cfg.random_seed)
                  if runs.get("test") else None)
    for scope_name in cfg.scopes:
        scope = EvalScope.named(scope_name)
        try:
            ranked = weight_search(train_cases, tuple(cfg.guessers), tuple(cfg.weights), scope)
        except EvaluationError as exc:
            raise PipelineError(f"train/{scope_name}: {exc}") from exc
        path = cfg.output_dir / f"search_train_{scope_name}.{ext}"
        _write(path, emit_report(EvalReport([r for _, r in ranked], scope, "train"), cfg.report_format))
        top = ranked[:cfg.top_k]
        print(f"[{scope_name}] top {len(top)}: " + " ".join(c.label for c, _ in top))
        if test_cases is not None:
            rows = [score(test_cases, c, scope, label=c.label) for c, _ in top]
            vpath = cfg.output_dir / f"search_validation_{scope_name}.{ext}"
            _write(vpath, emit_report(EvalReport(rows, scope, "test"), cfg.report_format))
    return 0


def correct_text(text, lexicon, rules, comb, seed=0, doc_id="input"):
    """Correct every non-word in ``text``; returns (new text, annotation lines)."""
    corpus = Corpus((build_document(text, doc_id),))
    ctx = GuessContext(lexicon, corpus, tuple(rules), seed)
    pieces, notes = [], []
    doc = corpus.documents[0]
    for tok in doc.tokens():
        out = tok.surface
        if tok.kind == WORD and not lexicon.is_known(tok.surface):
            pset = apply_h1(propose(lexicon, tok.surface, tok.coord)) if comb.use_h1 \
                else propose(lexicon, tok.surface, tok.coord)
            verdicts = ctx.run_all(comb.guessers, pset, tok.coord) if pset.proposals else {}
            if verdicts:
                verdict = combine([verdicts[g] for g in comb.guessers], comb, pset)
            else:
                verdict = None
            if verdict is not None and verdict.answered:
                result = GuesserVerdict.pick(comb.label, verdict.selected)
            else:
                result = GuesserVerdict.abstain(comb.label)
            if len(result.selected) == 1:
                (form,) = result.selected
                if tok.surface[:1].isupper() and form[:1].islower():
                    form = form[:1].upper() + form[1:]
                out = form
            else:
                alts = sorted(result.selected) if result.answered else list(pset.forms)
                out = f"[[{tok.surface}|{','.join(alts)}]]"
            notes.append(result.dump(tok.coord) + f"\t{tok.surface}\t{','.join(pset.forms)}")
        pieces.append(tok.pre + out)
    pieces.append(doc.trailing)
    return "".join(pieces), notes


def cmd_correct(cfg, args):
    if not cfg.combinations or len(cfg.combinations) != 1:
        raise ConfigError("correct needs exactly one --combination")
    (comb,) = _parse_all(cfg.combinations)
    lexicon, rules = _lexicon(cfg), _rules(cfg)
    try:
        if args.input and args.input != "-":
            text = Path(args.input).read_bytes().decode("utf-8")
        else:
            text = sys.stdin.buffer.read().decode("utf-8")
    except OSError as exc:
        raise PipelineError(f"cannot read {args.input}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise PipelineError(f"input is not UTF-8 (byte offset {exc.start})") from exc
    corrected, notes = correct_text(text, lexicon, rules, comb, cfg.random_seed)
    if args.output:
        _write(Path(args.output), corrected)
    else:
        sys.stdout.write(corrected)
    if args.annotations:
        _write(Path(args.annotations), "".join(n + "\n" for n in notes))
    else:
        for n in notes:
            print(n, file=sys.stderr)
    return 0


COMMANDS = {
    "ingest": cmd_ingest,
    "gen-errors": cmd_gen_errors,
    "correct": cmd_correct,
    "evaluate": cmd_evaluate,
    "search-weights": cmd_search_weights,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML run config (default: $CTXSPELL_CONFIG)")
    common.add_argument("--seed", type=int, action="append", help="antispell seed (repeatable)")
    common.add_argument("--rate", type=float, help="error rate per eligible word")
    common.add_argument("--combination", action="append", help="combination label, e.g. CG1+DF2+H2")
    common.add_argument("--scope", choices=SCOPES)
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", help="output directory")
    common.add_argument("--lexicon", help="lexicon TSV (overrides config)")
    common.add_argument("--rules", help="constraint rule file (overrides config)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ctxspell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "correct":
            p.add_argument("input", nargs="?", help="text file to correct (default stdin)")
            p.add_argument("-o", "--output", help="write corrected text here instead of stdout")
            p.add_argument("--annotations", help="write the annotation stream here instead of stderr")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    config_path = args.config or os.environ.get("CTXSPELL_CONFIG")
    try:
        cfg = load_config(Path(config_path) if config_path else None, args)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"ctxspell: {exc}", file=sys.stderr)
        return 2
    except (PipelineError, IngestError, EvaluationError, ValueError, KeyError) as exc:
        print(f"ctxspell: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
