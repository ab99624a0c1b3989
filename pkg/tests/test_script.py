import sys

import pytest

from mlplib.error import CorpusError
from mlplib.records import read_records
from mlplib.script import EXIT_WARNINGS, main, script


@pytest.fixture(scope='module')
def relations(corpus_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp('script') / 'relations.jsonl'
    rv = main(['extract', '--input', str(corpus_dir), '--out', str(out),
        '--method', 'both', '--k', '2'])
    assert rv in (0, EXIT_WARNINGS)
    return out


def test_extract(relations):
    recs = read_records(relations)
    assert any(r.method == 'mlp' for r in recs)
    assert any(r.is_pattern for r in recs)


def test_extract_config(corpus_dir, tmp_path):
    ini = tmp_path / 'my.ini'
    ini.write_text("[extract]\nmethod = pattern\n", encoding='utf-8')
    out = tmp_path / 'p.jsonl'
    main(['--config', str(ini), 'extract', '--input', str(corpus_dir),
        '--out', str(out)])
    recs = read_records(out)
    assert recs
    assert all(r.is_pattern for r in recs)


def test_stats(relations, capsys):
    assert main(['stats', '--in', str(relations), '--top', '3']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    counts = [int(line.split('\t')[0]) for line in lines]
    assert counts == sorted(counts, reverse=True)


def test_eval(relations, datadir, capsys):
    rv = main(['eval', '--gold', str(datadir / 'gold.tsv'),
        '--relations', str(relations), '--method', 'mlp'])
    assert rv == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1].startswith('method=mlp k=1 precision=')


def test_annotate(relations, corpus_dir, tmp_path):
    out = tmp_path / 'page.html'
    rv = main(['annotate', '--input', str(corpus_dir), '--doc', 'Density',
        '--relations', str(relations), '--out', str(out)])
    assert rv == 0
    assert 'class="identifier related"' in out.read_text(encoding='utf-8')

    out = tmp_path / 'page.pdf'
    main(['annotate', '--input', str(corpus_dir), '--doc', 'Density',
        '--relations', str(relations), '--out', str(out), '--pdf'])
    assert out.read_bytes().startswith(b'%PDF')


def test_annotate_missing(relations, corpus_dir, tmp_path):
    with pytest.raises(CorpusError):
        main(['annotate', '--input', str(corpus_dir), '--doc', 'Nope',
            '--relations', str(relations), '--out', str(tmp_path / 'x')])


def test_script_exit(relations, corpus_dir, tmp_path, monkeypatch):
    monkeypatch.setattr(sys, 'argv', ['mlp', 'annotate', '--input',
        str(corpus_dir), '--doc', 'Nope', '--relations', str(relations),
        '--out', str(tmp_path / 'x')])
    with pytest.raises(SystemExit) as excinfo:
        script()
    assert excinfo.value.code == 1


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(['extract'])
    assert excinfo.value.code == 2
    assert '--input' in capsys.readouterr().err


def test_extract_dump_warnings(tmp_path):
    fn = tmp_path / 'dump.xml'
    fn.write_text(
        "<mediawiki><page><title>Mass</title><revision><id>1</id>"
        "<text>The mass &lt;math&gt;m&lt;/math&gt; is large.</text>"
        "</revision></page>"
        "<page><title>Mass</title><revision><id>2</id>"
        "<text>again</text></revision></page></mediawiki>",
        encoding='utf-8')
    out = tmp_path / 'r.jsonl'
    rv = main(['extract', '--input', str(fn), '--format', 'xml-dump',
        '--out', str(out)])
    assert rv == EXIT_WARNINGS
    assert {r.doc_id for r in read_records(out)} == {'Mass'}
