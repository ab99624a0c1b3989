"""
Main script and command line parsing.

This file is part of mlp.
"""

import sys
import argparse

from . import consts
from .error import MlpError, CorpusError
from .settings import get_base_settings

import logging
logger = logging.getLogger('mlplib.script')

# exit status of a run completed with warnings
EXIT_WARNINGS = 2


def script():
    logging.basicConfig(
        level=logging.INFO,
        format='%(levelname)s %(message)s')

    try:
        sys.exit(main())

    except MlpError as e:
        logger.error("%s", e)
        sys.exit(1)

    except KeyboardInterrupt:
        logger.info("user interrupt")
        sys.exit(1)

    except Exception:
        logger.exception("unexpected error")
        sys.exit(1)


def main(argv=None):
    parser = make_arg_parser()
    opt = parser.parse_args(argv)

    if opt.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif opt.quiet:
        logging.getLogger().setLevel(logging.WARNING)

    settings = get_base_settings()
    if opt.config:
        settings.read(*opt.config)

    return opt.command(opt, settings)


def cmd_extract(opt, settings):
    from .pipeline import PipelineConfig, run_pipeline

    ext = settings['extract']
    params = settings.ranking_params(alpha=opt.alpha, beta=opt.beta,
        gamma=opt.gamma, k=opt.k, aggregate=opt.aggregate)
    config = PipelineConfig(
        input=opt.input, output=opt.out, format=opt.format,
        workers=opt.workers if opt.workers is not None else ext.workers,
        extractor=opt.method or ext.method,
        ranking=params, blacklist=opt.blacklist, lexicon=opt.lexicon,
        tagged_out=opt.tagged_out, tagged_in=opt.tagged_in,
        progress=opt.progress,
        sort_buffer=ext.sort_buffer)

    summary = run_pipeline(config)
    if summary.warnings:
        logger.info("%d warnings", len(summary.warnings))
        return EXIT_WARNINGS
    return 0


def cmd_stats(opt, settings):
    from .pipeline import aggregate_statistics
    from .records import read_records

    for (ident, desc), count in aggregate_statistics(
            read_records(opt.input), opt.top):
        print("%d\t%s\t%s" % (count, ident, desc))
    return 0


def cmd_annotate(opt, settings):
    from .records import read_records
    from .texvc import Blacklist
    from .wikitext import read_corpus

    for doc in read_corpus(opt.input, opt.format):
        if doc.doc_id == opt.doc:
            break
    else:
        raise CorpusError("document not found: %s" % opt.doc)

    relations = read_records(opt.relations)
    blacklist = Blacklist.load(opt.blacklist)
    if opt.pdf:
        from .pdf import annotate_pdf
        annotate_pdf(doc, relations, blacklist, opt.out, settings)
    else:
        from .html import annotate_html
        annotate_html(doc, relations, blacklist, opt.out, settings)

    if doc.warnings:
        return EXIT_WARNINGS
    return 0


def cmd_eval(opt, settings):
    from .evaluation import evaluate, format_report, load_gold
    from .records import read_records

    report = evaluate(load_gold(opt.gold), read_records(opt.relations),
        opt.k, opt.method)
    print(format_report(report))
    if report.warnings:
        return EXIT_WARNINGS
    return 0


description = """Discover the definitions of the identifiers used in the
formulas of wiki articles."""


def make_arg_parser():
    parser = argparse.ArgumentParser(prog='mlp',
        description=description,
        epilog=consts.license + '\n\n' + consts.progurl)
    parser.add_argument('--version', action='version',
        version="%(prog)s " + consts.version + " by " + consts.author)
    parser.add_argument('-v', '--verbose', action='store_true',
        help="print debug messages")
    parser.add_argument('-q', '--quiet', action='store_true',
        help="print only warnings and errors")
    parser.add_argument('--config', action='append', metavar='FILE',
        help="read settings from this file (can be used more than once)")

    sub = parser.add_subparsers(dest='command_name', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('extract',
        help="extract identifier definitions from a corpus")
    p.set_defaults(command=cmd_extract)
    _add_corpus_args(p)
    p.add_argument('--method', choices=['pattern', 'statistical', 'both'],
        help="extractor to run [default: statistical]")
    p.add_argument('--alpha', type=float, metavar='F',
        help="weight of the token distance [default: 1]")
    p.add_argument('--beta', type=float, metavar='F',
        help="weight of the sentence position [default: 1]")
    p.add_argument('--gamma', type=float, metavar='F',
        help="weight of the term frequency [default: 0.1]")
    p.add_argument('--k', type=int, metavar='N',
        help="descriptions kept per identifier [default: 1]")
    p.add_argument('--aggregate', choices=['max', 'rsum'],
        help="how to merge repeated relations [default: max]")
    p.add_argument('--workers', type=int, metavar='N',
        help="worker processes [default: 1]")
    p.add_argument('--blacklist', metavar='FILE',
        help="identifier blacklist [default: shipped]")
    p.add_argument('--lexicon', metavar='FILE',
        help="tagger lexicon [default: shipped]")
    p.add_argument('--out', default='-', metavar='FILE',
        help="relations file to write [default: stdout]")
    p.add_argument('--tagged-out', metavar='FILE',
        help="also write the tagged sentences to this file")
    p.add_argument('--tagged-in', metavar='FILE',
        help="read the tagged sentences from this file instead of tagging")
    p.add_argument('--progress', action='store_true',
        help="show a progress bar")

    p = sub.add_parser('stats',
        help="count the most common definitions of a relations file")
    p.set_defaults(command=cmd_stats)
    p.add_argument('--in', dest='input', required=True, metavar='FILE',
        help="relations file to read")
    p.add_argument('--top', type=int, default=20, metavar='N',
        help="rows to print [default: %(default)s]")

    p = sub.add_parser('annotate',
        help="render an article with its identifiers annotated")
    p.set_defaults(command=cmd_annotate)
    _add_corpus_args(p)
    p.add_argument('--doc', required=True, metavar='DOC_ID',
        help="id of the document to render")
    p.add_argument('--relations', required=True, metavar='FILE',
        help="relations file to read")
    p.add_argument('--out', required=True, metavar='FILE',
        help="output file to write")
    p.add_argument('--pdf', action='store_true',
        help="write pdf instead of html")
    p.add_argument('--blacklist', metavar='FILE',
        help="identifier blacklist [default: shipped]")

    p = sub.add_parser('eval',
        help="evaluate a relations file against a gold file")
    p.set_defaults(command=cmd_eval)
    p.add_argument('--gold', required=True, metavar='FILE',
        help="gold file to read")
    p.add_argument('--relations', required=True, metavar='FILE',
        help="relations file to read")
    p.add_argument('--k', type=int, default=1, metavar='N',
        help="descriptions considered per identifier [default: %(default)s]")
    p.add_argument('--method', choices=['pattern', 'mlp'],
        help="only consider relations found by this method")

    return parser


def _add_corpus_args(p):
    p.add_argument('--input', required=True, metavar='PATH',
        help="corpus to read")
    p.add_argument('--format', default='wikitext-dir',
        choices=['xml-dump', 'wikitext-dir'],
        help="corpus format [default: %(default)s]")
