"""
Нейросетевая feedforward n-gram LM (полный softmax).
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from neural.layers import log_softmax
from neural.params import Example, ModelParams, zeros_like

NplmState = Tuple[int, ...]


class Nplm:
    """
    Контекст из n-1 последних id -> tanh слой -> softmax.

    Тензоры: embedding (V, E), hidden_w (H, (n-1)E), hidden_b (H,),
    output_w (V, H), output_b (V,).
    """

    arch = 'nplm'

    def __init__(self, params: ModelParams):
        self.params = params
        self.context = params.dims['context']
        self.embed = params.dims['embed']
        self.bos_id = params.dims['bos']
        self.eos_id = params.dims['eos']

    @staticmethod
    def tensor_shapes(dims):
        v, e, h, n = dims['vocab'], dims['embed'], dims['hidden'], dims['context']
        return [
            ('embedding', (v, e)),
            ('hidden_w', (h, n * e)),
            ('hidden_b', (h,)),
            ('output_w', (v, h)),
            ('output_b', (v,)),
        ]

    def _forward(self, contexts: np.ndarray):
        t = self.params.tensors
        x = t['embedding'][contexts].reshape(len(contexts), self.context * self.embed)
        activations = np.tanh(x @ t['hidden_w'].T + t['hidden_b'])
        logp = log_softmax(activations @ t['output_w'].T + t['output_b'])
        return x, activations, logp

    def loss_and_grads(self, example: Example, compute_grads: bool = True):
        padded = [self.bos_id] * self.context + list(example.target)
        targets = list(example.target) + [self.eos_id]
        n = len(targets)
        contexts = np.array([padded[i:i + self.context] for i in range(n)], dtype=np.int64)

        x, activations, logp = self._forward(contexts)
        loss = -logp[np.arange(n), targets].mean()
        if not compute_grads:
            return loss, None

        t = self.params.tensors
        grads = zeros_like(self.params)
        dlogits = np.exp(logp)
        dlogits[np.arange(n), targets] -= 1.0
        dlogits /= n
        grads['output_w'] = dlogits.T @ activations
        grads['output_b'] = dlogits.sum(axis=0)
        dz = (dlogits @ t['output_w']) * (1.0 - activations ** 2)
        grads['hidden_w'] = dz.T @ x
        grads['hidden_b'] = dz.sum(axis=0)
        dx = (dz @ t['hidden_w']).reshape(n, self.context, self.embed)
        np.add.at(grads['embedding'], contexts, dx)
        return loss, grads

    def initial_state(self, source: Optional[Sequence[int]] = None) -> NplmState:
        return (self.bos_id,) * self.context

    def step_batch(self, states: Sequence[NplmState], words: Sequence[int]) -> Tuple[np.ndarray, List[NplmState]]:
        new_states = [tuple(state[1:]) + (word,) for state, word in zip(states, words)]
        _, _, logp = self._forward(np.array(new_states, dtype=np.int64))
        return logp, new_states
