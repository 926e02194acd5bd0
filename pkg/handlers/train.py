import logging

from config import DIMENSION_PRESETS
from core.corpus import load_corpus
from core.vocabulary import Vocabulary
from handlers.common import add_config_argument, resolve
from neural.params import ARCHITECTURES
from neural.serialization import save_params
from neural.training import TrainingConfig, train_model
from ngram_lm.arpa import write_arpa
from ngram_lm.model import perplexity
from ngram_lm.training import train_ngram
from utils.errors import ConfigError
from utils.messages import format_training_summary

logger = logging.getLogger(__name__)

KINDS = ('ngram',) + ARCHITECTURES


def register(subparsers):
    parser = subparsers.add_parser('train', help='обучить n-gram или нейросетевую модель')
    parser.add_argument('kind', nargs='?', choices=KINDS, help='тип модели')
    add_config_argument(parser)
    parser.add_argument('--train', help='обучающий корпус')
    parser.add_argument('--dev', help='dev корпус (по умолчанию обучающий)')
    parser.add_argument('--vocab', help='файл словаря')
    parser.add_argument('--output', help='путь к модели')
    parser.add_argument('--order', type=int, help='порядок n-gram модели')
    parser.add_argument('--smoothing', help='auto, kneser_ney, witten_bell или mle')
    parser.add_argument('--preset', choices=sorted(DIMENSION_PRESETS), help='пресет размерностей')
    parser.add_argument('--embed', type=int, help='размер эмбеддингов')
    parser.add_argument('--hidden', type=int, help='размер скрытого слоя')
    parser.add_argument('--attention', type=int, help='размер аннотаций bag2seq')
    parser.add_argument('--context', type=int, help='контекст NPLM (n-1)')
    parser.add_argument('--epochs', type=int)
    parser.add_argument('--learning-rate', dest='learning_rate', type=float)
    parser.add_argument('--clip', type=float, help='порог нормы градиента')
    parser.add_argument('--init-scale', dest='init_scale', type=float)
    parser.add_argument('--encoder-init-scale', dest='encoder_init_scale', type=float,
                        help='интервал инициализации кодировщика bag2seq')
    parser.add_argument('--lr-patience', dest='lr_patience', type=int,
                        help='эпох без улучшения dev до уменьшения шага')
    parser.add_argument('--seed', type=int)
    parser.set_defaults(handler=cmd_train)


def training_config(cfg) -> TrainingConfig:
    if cfg['preset'] not in DIMENSION_PRESETS:
        raise ConfigError(f"unknown preset {cfg['preset']!r}, expected one of {sorted(DIMENSION_PRESETS)}")
    preset = DIMENSION_PRESETS[cfg['preset']]
    return TrainingConfig(
        embed=cfg.get('embed', preset['embed']),
        hidden=cfg.get('hidden', preset['hidden']),
        attention=cfg.get('attention', preset['attention']),
        context=cfg['context'],
        epochs=cfg['epochs'],
        learning_rate=cfg['learning_rate'],
        clip=cfg['clip'],
        init_scale=cfg['init_scale'],
        encoder_init_scale=cfg['encoder_init_scale'],
        lr_patience=cfg['lr_patience'],
        seed=cfg['seed'],
    )


def cmd_train(args) -> int:
    """
    Обучить модель и сохранить артефакт, журнал и итоговую конфигурацию.
    """
    cfg = resolve('train', args)
    kind = cfg['kind']
    if kind not in KINDS:
        raise ConfigError(f"unknown model kind {kind!r}, expected one of {KINDS}")

    vocab = Vocabulary.load(cfg['vocab'])
    corpus = load_corpus(cfg['train'], vocab)
    dev = load_corpus(cfg['dev'], vocab) if cfg.get('dev') else None
    output = cfg['output']
    logger.info(f"🏋️ [TRAIN] {kind}: {cfg['train']} -> {output}")

    if kind == 'ngram':
        model = train_ngram(corpus, len(vocab), vocab.bos_id, vocab.eos_id, vocab.unk_id,
                            order=cfg['order'], smoothing=cfg['smoothing'])
        write_arpa(model, vocab, output)
        ppl = perplexity(model, dev or corpus)
        with open(output + '.log', 'w', encoding='utf-8') as f:
            f.write(f"smoothing\t{model.smoothing}\ndev_perplexity\t{ppl:.6f}\n")
        logger.info(f"✅ [TRAIN] ngram ({model.smoothing}): dev ppl {ppl:.2f}")
        cfg.save_next_to(output)
        print(format_training_summary(kind, output, counts=model.counts()))
        return 0

    params, history = train_model(kind, corpus, vocab, training_config(cfg), dev)
    save_params(params, output)
    with open(output + '.log', 'w', encoding='utf-8') as f:
        f.write(history.to_tsv())
    cfg.save_next_to(output)
    print(format_training_summary(kind, output, history=history))
    return 0
