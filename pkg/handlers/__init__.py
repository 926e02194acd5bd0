from handlers import bench, decode, evaluate, shuffle, toy, train, tune, vocab

# Порядок подкоманд в --help
COMMANDS = (vocab, toy, train, shuffle, decode, tune, evaluate, bench)
