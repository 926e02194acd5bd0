"""
bag2seq: LSTM декодер с вниманием над мешком слов.

Кодировщик не рекуррентный: каждая аннотация h_i = tanh(We x_i + be)
считается по своему слову, поэтому от порядка входа ничего не зависит.
Мешок всё равно подаётся в отсортированном виде, чтобы аннотации были
побитово одинаковыми для любых перестановок.

Декодер:
    c_t = attention(h_{t-1}, annotations)
    h_t, m_t = LSTM([emb(w_{t-1}); c_t], h_{t-1}, m_{t-1})
    P(w_t | ...) = softmax(Wo h_t + Wc c_t + bo)
    h_0 = tanh(Winit mean(annotations) + binit), m_0 = 0

Контекст c_t идёт и в LSTM, и прямо в выходной слой. Тензоры из
encoder_tensors инициализируются в отдельном интервале
(TrainingConfig.encoder_init_scale).
"""

from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from neural.layers import (attention_backward, attention_forward, log_softmax, lstm_step,
                           lstm_step_backward)
from neural.params import Example, ModelParams, zeros_like
from neural.rnnlm import freeze


class Bag2SeqState(NamedTuple):
    h: np.ndarray
    c: np.ndarray
    annotations: np.ndarray
    projected: np.ndarray


class Bag2Seq:
    """
    Тензоры: enc_embedding (V, E), enc_w (A, E), enc_b (A,),
    att_state_w (A, H), att_annot_w (A, A), att_v (A,), init_w (H, A),
    init_b (H,), dec_embedding (V, E), lstm_w (4H, E + A + H), lstm_b (4H,),
    output_w (V, H), context_w (V, A), output_b (V,).
    """

    arch = 'bag2seq'
    encoder_tensors = ('enc_embedding', 'enc_w', 'init_w')

    def __init__(self, params: ModelParams):
        self.params = params
        self.embed = params.dims['embed']
        self.hidden = params.dims['hidden']
        self.attention = params.dims['attention']
        self.bos_id = params.dims['bos']
        self.eos_id = params.dims['eos']

    @staticmethod
    def tensor_shapes(dims):
        v, e, h, a = dims['vocab'], dims['embed'], dims['hidden'], dims['attention']
        return [
            ('enc_embedding', (v, e)),
            ('enc_w', (a, e)),
            ('enc_b', (a,)),
            ('att_state_w', (a, h)),
            ('att_annot_w', (a, a)),
            ('att_v', (a,)),
            ('init_w', (h, a)),
            ('init_b', (h,)),
            ('dec_embedding', (v, e)),
            ('lstm_w', (4 * h, e + a + h)),
            ('lstm_b', (4 * h,)),
            ('output_w', (v, h)),
            ('context_w', (v, a)),
            ('output_b', (v,)),
        ]

    def encode(self, source: Sequence[int]):
        """
        Аннотации мешка и начальное состояние декодера.

        Returns:
            (embedded, annotations, projected, mean, h0)
        """
        if len(source) == 0:
            raise ValueError("bag2seq needs a non-empty bag")
        t = self.params.tensors
        embedded = t['enc_embedding'][list(source)]
        annotations = np.tanh(embedded @ t['enc_w'].T + t['enc_b'])
        projected = annotations @ t['att_annot_w'].T
        mean = annotations.mean(axis=0)
        h0 = np.tanh(t['init_w'] @ mean + t['init_b'])
        return embedded, annotations, projected, mean, h0

    def loss_and_grads(self, example: Example, compute_grads: bool = True):
        t = self.params.tensors
        source = list(example.source)
        embedded, annotations, projected, mean, h0 = self.encode(source)

        inputs = [self.bos_id] + list(example.target)
        targets = list(example.target) + [self.eos_id]
        n = len(targets)

        h = h0
        c = np.zeros(self.hidden)
        steps = []
        hs = []
        contexts = []
        for word in inputs:
            context, alpha, pre = attention_forward(t['att_state_w'], t['att_v'], h, annotations, projected)
            x = np.concatenate([t['dec_embedding'][word], context])
            h_new, c, cache = lstm_step(t['lstm_w'], t['lstm_b'], x, h, c)
            steps.append((h, alpha, pre, cache))
            h = h_new
            hs.append(h)
            contexts.append(context)
        hidden_states = np.stack(hs)
        context_states = np.stack(contexts)
        logp = log_softmax(hidden_states @ t['output_w'].T + context_states @ t['context_w'].T + t['output_b'])
        loss = -logp[np.arange(n), targets].mean()
        if not compute_grads:
            return loss, None

        grads = zeros_like(self.params)
        dlogits = np.exp(logp)
        dlogits[np.arange(n), targets] -= 1.0
        dlogits /= n
        grads['output_w'] = dlogits.T @ hidden_states
        grads['context_w'] = dlogits.T @ context_states
        grads['output_b'] = dlogits.sum(axis=0)
        dhidden = dlogits @ t['output_w']
        dcontexts = dlogits @ t['context_w']

        dannotations = np.zeros_like(annotations)
        dh_next = np.zeros(self.hidden)
        dc_next = np.zeros(self.hidden)
        split = self.embed + self.attention
        for step in reversed(range(n)):
            h_prev, alpha, pre, cache = steps[step]
            dw, db, dxh, dc_next = lstm_step_backward(t['lstm_w'], cache, dhidden[step] + dh_next, dc_next)
            grads['lstm_w'] += dw
            grads['lstm_b'] += db
            grads['dec_embedding'][inputs[step]] += dxh[:self.embed]
            dstate_w, dannot_w, dv, dstate, dann = attention_backward(
                t['att_state_w'], t['att_annot_w'], t['att_v'], h_prev, annotations, alpha, pre,
                dxh[self.embed:split] + dcontexts[step],
            )
            grads['att_state_w'] += dstate_w
            grads['att_annot_w'] += dannot_w
            grads['att_v'] += dv
            dannotations += dann
            dh_next = dxh[split:] + dstate

        dinit = dh_next * (1.0 - h0 ** 2)
        grads['init_w'] += np.outer(dinit, mean)
        grads['init_b'] += dinit
        dannotations += (t['init_w'].T @ dinit) / len(source)

        dpre = dannotations * (1.0 - annotations ** 2)
        grads['enc_w'] += dpre.T @ embedded
        grads['enc_b'] += dpre.sum(axis=0)
        np.add.at(grads['enc_embedding'], source, dpre @ t['enc_w'])
        return loss, grads

    def initial_state(self, source: Sequence[int]) -> Bag2SeqState:
        """Состояние пустого префикса; source - отсортированный мешок."""
        _, annotations, projected, _, h0 = self.encode(source)
        c0 = np.zeros(self.hidden)
        freeze(annotations, projected, h0, c0)
        return Bag2SeqState(h0, c0, annotations, projected)

    def attention_weights(self, state: Bag2SeqState) -> np.ndarray:
        t = self.params.tensors
        _, alpha, _ = attention_forward(t['att_state_w'], t['att_v'], state.h, state.annotations, state.projected)
        return alpha

    def step_batch(self, states: Sequence[Bag2SeqState], words: Sequence[int]
                   ) -> Tuple[np.ndarray, List[Bag2SeqState]]:
        shared = all(state.annotations is states[0].annotations for state in states)
        if not shared:
            results = [self.step_batch([state], [word]) for state, word in zip(states, words)]
            return np.concatenate([logp for logp, _ in results]), [new[0] for _, new in results]

        t = self.params.tensors
        annotations = states[0].annotations
        projected = states[0].projected
        h_prev = np.stack([state.h for state in states])
        c_prev = np.stack([state.c for state in states])
        context, _, _ = attention_forward(t['att_state_w'], t['att_v'], h_prev, annotations, projected)
        x = np.concatenate([t['dec_embedding'][list(words)], context], axis=-1)
        h, c, _ = lstm_step(t['lstm_w'], t['lstm_b'], x, h_prev, c_prev)
        logp = log_softmax(h @ t['output_w'].T + context @ t['context_w'].T + t['output_b'])
        freeze(h, c)
        return logp, [Bag2SeqState(h[i], c[i], annotations, projected) for i in range(len(states))]
