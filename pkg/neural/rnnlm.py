"""
LSTM языковая модель: P(w_t | w_1 .. w_{t-1}).
"""

from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from neural.layers import log_softmax, lstm_step, lstm_step_backward
from neural.params import Example, ModelParams, zeros_like


class LstmState(NamedTuple):
    h: np.ndarray
    c: np.ndarray


def freeze(*arrays: np.ndarray):
    for array in arrays:
        array.setflags(write=False)


class RnnLm:
    """
    Однослойная LSTM LM.

    Тензоры: embedding (V, E), lstm_w (4H, E + H), lstm_b (4H,),
    output_w (V, H), output_b (V,).
    """

    arch = 'rnnlm'

    def __init__(self, params: ModelParams):
        self.params = params
        self.vocab_size = params.dims['vocab']
        self.embed = params.dims['embed']
        self.hidden = params.dims['hidden']
        self.bos_id = params.dims['bos']
        self.eos_id = params.dims['eos']

    @staticmethod
    def tensor_shapes(dims):
        v, e, h = dims['vocab'], dims['embed'], dims['hidden']
        return [
            ('embedding', (v, e)),
            ('lstm_w', (4 * h, e + h)),
            ('lstm_b', (4 * h,)),
            ('output_w', (v, h)),
            ('output_b', (v,)),
        ]

    def loss_and_grads(self, example: Example, compute_grads: bool = True):
        """
        Средняя по токенам кросс-энтропия предложения (включая </s>) и градиенты.

        Returns:
            (loss, grads или None)
        """
        t = self.params.tensors
        inputs = [self.bos_id] + list(example.target)
        targets = list(example.target) + [self.eos_id]
        n = len(targets)

        h = np.zeros(self.hidden)
        c = np.zeros(self.hidden)
        caches = []
        hs = []
        for word in inputs:
            h, c, cache = lstm_step(t['lstm_w'], t['lstm_b'], t['embedding'][word], h, c)
            caches.append(cache)
            hs.append(h)
        hidden_states = np.stack(hs)
        logp = log_softmax(hidden_states @ t['output_w'].T + t['output_b'])
        loss = -logp[np.arange(n), targets].mean()
        if not compute_grads:
            return loss, None

        grads = zeros_like(self.params)
        dlogits = np.exp(logp)
        dlogits[np.arange(n), targets] -= 1.0
        dlogits /= n
        grads['output_w'] = dlogits.T @ hidden_states
        grads['output_b'] = dlogits.sum(axis=0)
        dhidden = dlogits @ t['output_w']

        dh_next = np.zeros(self.hidden)
        dc_next = np.zeros(self.hidden)
        for step in reversed(range(n)):
            dw, db, dxh, dc_next = lstm_step_backward(t['lstm_w'], caches[step], dhidden[step] + dh_next, dc_next)
            grads['lstm_w'] += dw
            grads['lstm_b'] += db
            grads['embedding'][inputs[step]] += dxh[:self.embed]
            dh_next = dxh[self.embed:]
        return loss, grads

    def initial_state(self, source: Optional[Sequence[int]] = None) -> LstmState:
        h = np.zeros(self.hidden)
        c = np.zeros(self.hidden)
        freeze(h, c)
        return LstmState(h, c)

    def step_batch(self, states: Sequence[LstmState], words: Sequence[int]) -> Tuple[np.ndarray, List[LstmState]]:
        """
        Продвинуть батч состояний на одно слово.

        Returns:
            (log-распределения (B, V), новые состояния)
        """
        t = self.params.tensors
        h_prev = np.stack([state.h for state in states])
        c_prev = np.stack([state.c for state in states])
        h, c, _ = lstm_step(t['lstm_w'], t['lstm_b'], t['embedding'][list(words)], h_prev, c_prev)
        logp = log_softmax(h @ t['output_w'].T + t['output_b'])
        freeze(h, c)
        return logp, [LstmState(h[i], c[i]) for i in range(len(states))]
