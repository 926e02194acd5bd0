import re

import pytest

from core.corpus import read_token_lines
from core.vocabulary import Vocabulary
from main import main

NBEST_LINE = re.compile(r'^\d+ \|\|\| \S.* \|\|\| -?\d+\.\d{6}$')


@pytest.fixture
def workspace(tmp_path):
    """Корпус, словарь, мешки и триграммная модель в tmp_path."""
    paths = {name: str(tmp_path / name) for name in ('corpus.txt', 'vocab.txt', 'bags.txt', 'tri.arpa')}
    assert main(['toy', '--output', paths['corpus.txt'], '--size', '40', '--seed', '3']) == 0
    assert main(['vocab', '--train', paths['corpus.txt'], '--output', paths['vocab.txt'], '--size', '200']) == 0
    assert main(['shuffle', '--input', paths['corpus.txt'], '--output', paths['bags.txt'], '--seed', '5']) == 0
    assert main(['train', 'ngram', '--train', paths['corpus.txt'], '--vocab', paths['vocab.txt'],
                 '--output', paths['tri.arpa'], '--order', '3']) == 0
    paths['dir'] = tmp_path
    return paths


def decode_args(workspace, output, *extra):
    return ['decode', '--input', workspace['bags.txt'], '--output', output, '--vocab', workspace['vocab.txt'],
            '--scorers', f"tri:{workspace['tri.arpa']}", *extra]


class TestPreparation:
    def test_toy_corpus(self, workspace):
        sentences = read_token_lines(workspace['corpus.txt'])
        assert len(sentences) == 40
        assert all(tokens[-1] == '.' for tokens in sentences)

    def test_vocabulary(self, workspace):
        vocab = Vocabulary.load(workspace['vocab.txt'])
        assert vocab.tokens[:3] == ('<s>', '</s>', '<unk>')
        assert len(vocab) <= 200

    def test_random_shuffle_is_seeded(self, workspace):
        again = str(workspace['dir'] / 'again.txt')
        assert main(['shuffle', '--input', workspace['corpus.txt'], '--output', again, '--seed', '5']) == 0
        assert read_token_lines(again) == read_token_lines(workspace['bags.txt'])
        for bag, sentence in zip(read_token_lines(again), read_token_lines(workspace['corpus.txt'])):
            assert sorted(bag) == sorted(sentence)

    def test_sorted_shuffle(self, workspace):
        output = str(workspace['dir'] / 'sorted.txt')
        assert main(['shuffle', '--input', workspace['corpus.txt'], '--output', output, '--mode', 'sorted']) == 0
        assert all(bag == sorted(bag) for bag in read_token_lines(output))

    def test_training_writes_log_and_config(self, workspace):
        with open(workspace['tri.arpa'] + '.log', encoding='utf-8') as f:
            assert f.read().startswith('smoothing\t')
        with open(workspace['tri.arpa'] + '.config', encoding='utf-8') as f:
            assert 'order=3\n' in f.read()


class TestDecode:
    def test_repeatable_and_permutations(self, workspace):
        first = str(workspace['dir'] / 'first.txt')
        second = str(workspace['dir'] / 'second.txt')
        assert main(decode_args(workspace, first, '--beam', '1')) == 0
        assert main(decode_args(workspace, second, '--beam', '1')) == 0
        assert read_token_lines(first) == read_token_lines(second)
        for ordered, bag in zip(read_token_lines(first), read_token_lines(workspace['bags.txt'])):
            assert sorted(ordered) == sorted(bag)

    def test_nbest_blocks(self, workspace):
        output = str(workspace['dir'] / 'out.txt')
        nbest = str(workspace['dir'] / 'nbest.txt')
        assert main(decode_args(workspace, output, '--beam', '3', '--nbest', nbest)) == 0
        with open(nbest, encoding='utf-8') as f:
            blocks = f.read().split('\n\n')
        assert len(blocks) == 40
        for block in blocks:
            lines = block.strip('\n').split('\n')
            assert 1 <= len(lines) <= 3
            assert all(NBEST_LINE.match(line) for line in lines)
            assert lines[0].startswith('1 ||| ')

    def test_config_file_and_flags(self, workspace, capsys):
        settings = workspace['dir'] / 'decode.conf'
        settings.write_text('# search\nbeam=1\nheuristic=g\nstats=true\n', encoding='utf-8')
        output = str(workspace['dir'] / 'out.txt')
        assert main(decode_args(workspace, output, '--config', str(settings), '--beam', '2')) == 0
        with open(output + '.config', encoding='utf-8') as f:
            saved = f.read()
        assert 'beam=2\n' in saved
        assert 'heuristic=g\n' in saved
        assert 'max(s - g)' in capsys.readouterr().out

    def test_heuristic_f_uses_ngram_unigrams(self, workspace):
        output = str(workspace['dir'] / 'out.txt')
        assert main(decode_args(workspace, output, '--beam', '2', '--heuristic', 'f')) == 0


class TestEvalTuneBench:
    def test_eval_identity(self, workspace, capsys):
        report = str(workspace['dir'] / 'bleu.txt')
        assert main(['eval', workspace['corpus.txt'], workspace['corpus.txt'], '--output', report]) == 0
        assert 'BLEU = 100.00' in capsys.readouterr().out
        with open(report, encoding='utf-8') as f:
            assert f.readline().startswith('BLEU = 100.00')

    def test_eval_line_mismatch(self, workspace):
        short = workspace['dir'] / 'short.txt'
        short.write_text('the cat .\n', encoding='utf-8')
        assert main(['eval', workspace['corpus.txt'], str(short)]) == 2

    def test_tune_single_scorer(self, workspace, capsys):
        weights = str(workspace['dir'] / 'weights.txt')
        assert main(['tune', '--dev-bags', workspace['bags.txt'], '--dev-refs', workspace['corpus.txt'],
                     '--vocab', workspace['vocab.txt'], '--scorers', f"tri:{workspace['tri.arpa']}",
                     '--output', weights, '--beam', '2', '--budget', '3']) == 0
        with open(weights, encoding='utf-8') as f:
            assert f.read() == 'tri\t1\n'
        assert 'single' in capsys.readouterr().out

    def test_decode_with_weights_file(self, workspace):
        weights = workspace['dir'] / 'weights.txt'
        weights.write_text('tri\t1\nbi\t0.5\n', encoding='utf-8')
        output = str(workspace['dir'] / 'out.txt')
        args = ['decode', '--input', workspace['bags.txt'], '--output', output, '--vocab', workspace['vocab.txt'],
                '--scorers', f"tri:{workspace['tri.arpa']},bi:{workspace['tri.arpa']}",
                '--weights', str(weights), '--beam', '1']
        assert main(args) == 0
        assert len(read_token_lines(output)) == 40

    def test_bench_rows(self, workspace):
        table = str(workspace['dir'] / 'timing.tsv')
        assert main(['bench', '--input', workspace['bags.txt'], '--vocab', workspace['vocab.txt'],
                     '--scorers', f"tri:{workspace['tri.arpa']}", '--output', table,
                     '--beams', '1,2', '--heuristics', 'none,g', '--sentences', '3']) == 0
        with open(table, encoding='utf-8') as f:
            rows = f.read().splitlines()
        assert rows[0].startswith('scorers\tbeam')
        assert len(rows) == 5

    def test_bench_bad_beam_list(self, workspace):
        table = str(workspace['dir'] / 'timing.tsv')
        assert main(['bench', '--input', workspace['bags.txt'], '--vocab', workspace['vocab.txt'],
                     '--scorers', f"tri:{workspace['tri.arpa']}", '--output', table, '--beams', '1,x']) == 1


class TestExitCodes:
    def test_no_command(self):
        assert main([]) == 1

    def test_missing_required_setting(self, workspace):
        output = str(workspace['dir'] / 'out.txt')
        assert main(['decode', '--input', workspace['bags.txt'], '--output', output,
                     '--vocab', workspace['vocab.txt']]) == 1

    def test_missing_input_file(self, workspace):
        assert main(['eval', str(workspace['dir'] / 'nothing.txt'), workspace['corpus.txt']]) == 1

    def test_unknown_config_key(self, workspace):
        settings = workspace['dir'] / 'bad.conf'
        settings.write_text('beem=3\n', encoding='utf-8')
        output = str(workspace['dir'] / 'out.txt')
        assert main(decode_args(workspace, output, '--config', str(settings))) == 1

    def test_vocabulary_mismatch_is_a_data_error(self, workspace):
        other = workspace['dir'] / 'other_vocab.txt'
        other.write_text('<s>\n</s>\n<unk>\nzebra\n', encoding='utf-8')
        output = str(workspace['dir'] / 'out.txt')
        args = decode_args(workspace, output)
        args[args.index('--vocab') + 1] = str(other)
        assert main(args) == 2

    def test_invalid_utf8_is_a_data_error(self, workspace, capsys):
        broken = workspace['dir'] / 'broken.txt'
        broken.write_bytes(b'the cat\n\xff\n')
        assert main(['eval', str(broken), str(broken)]) == 2
        assert '❌' in capsys.readouterr().err
