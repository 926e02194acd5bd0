"""
Общие слои на numpy: softmax, LSTM ячейка, аддитивное внимание.

Прямые проходы работают и для одного вектора, и для батча (ведущая ось);
обратные - только для одного вектора (обучение идёт по предложениям).
"""

from typing import Tuple

import numpy as np


def sigmoid(x: np.ndarray) -> np.ndarray:
    # tanh-форма не переполняется на больших |x|
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def log_softmax(logits: np.ndarray, axis: int = -1) -> np.ndarray:
    shifted = logits - logits.max(axis=axis, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=axis, keepdims=True))


def softmax(logits: np.ndarray, axis: int = -1) -> np.ndarray:
    shifted = np.exp(logits - logits.max(axis=axis, keepdims=True))
    return shifted / shifted.sum(axis=axis, keepdims=True)


LstmCache = Tuple[np.ndarray, ...]


def lstm_step(weights: np.ndarray, bias: np.ndarray, x: np.ndarray, h: np.ndarray,
              c: np.ndarray) -> Tuple[np.ndarray, np.ndarray, LstmCache]:
    """
    Один шаг LSTM.

    Гейты в порядке i, f, o, g: weights имеет форму (4H, D + H) и
    применяется к [x; h].

    Args:
        weights: Матрица весов
        bias: Смещения (4H,)
        x: Вход (D,) или (B, D)
        h: Предыдущее скрытое состояние
        c: Предыдущее состояние ячейки

    Returns:
        (h_new, c_new, cache)
    """
    hidden = h.shape[-1]
    xh = np.concatenate([x, h], axis=-1)
    z = xh @ weights.T + bias
    i = sigmoid(z[..., :hidden])
    f = sigmoid(z[..., hidden:2 * hidden])
    o = sigmoid(z[..., 2 * hidden:3 * hidden])
    g = np.tanh(z[..., 3 * hidden:])
    c_new = f * c + i * g
    tanh_c = np.tanh(c_new)
    h_new = o * tanh_c
    return h_new, c_new, (xh, i, f, o, g, c, tanh_c)


def lstm_step_backward(weights: np.ndarray, cache: LstmCache, dh: np.ndarray,
                       dc: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Обратный проход шага LSTM.

    Returns:
        (dweights, dbias, d[x; h], dc_prev)
    """
    xh, i, f, o, g, c_prev, tanh_c = cache
    do = dh * tanh_c
    dc = dc + dh * o * (1.0 - tanh_c ** 2)
    di = dc * g
    dg = dc * i
    df = dc * c_prev
    dz = np.concatenate([
        di * i * (1.0 - i),
        df * f * (1.0 - f),
        do * o * (1.0 - o),
        dg * (1.0 - g ** 2),
    ])
    return np.outer(dz, xh), dz, weights.T @ dz, dc * f


def attention_forward(state_w: np.ndarray, score_v: np.ndarray, state: np.ndarray,
                      annotations: np.ndarray, projected: np.ndarray
                      ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Аддитивное внимание: e_i = v . tanh(W s + U h_i), c = sum_i alpha_i h_i.

    Args:
        state_w: W (K, H)
        score_v: v (K,)
        state: Состояние декодера (H,) или (B, H)
        annotations: Аннотации h_i (T, A)
        projected: U h_i, посчитанные один раз (T, K)

    Returns:
        (context, alpha, pre): контекст (A,) или (B, A), веса (T,) или (B, T),
        tanh-активации для обратного прохода
    """
    pre = np.tanh(projected + np.expand_dims(state @ state_w.T, -2))
    alpha = softmax(pre @ score_v, axis=-1)
    return alpha @ annotations, alpha, pre


def attention_backward(state_w: np.ndarray, annotation_w: np.ndarray, score_v: np.ndarray,
                       state: np.ndarray, annotations: np.ndarray, alpha: np.ndarray,
                       pre: np.ndarray, dcontext: np.ndarray):
    """
    Обратный проход внимания для одного состояния.

    Returns:
        (dstate_w, dannotation_w, dscore_v, dstate, dannotations)
    """
    dalpha = annotations @ dcontext
    dannotations = np.outer(alpha, dcontext)
    denergy = alpha * (dalpha - alpha @ dalpha)
    dscore_v = pre.T @ denergy
    dz = np.outer(denergy, score_v) * (1.0 - pre ** 2)
    dz_sum = dz.sum(axis=0)
    dannotations += dz @ annotation_w
    return np.outer(dz_sum, state), dz.T @ annotations, dscore_v, state_w.T @ dz_sum, dannotations


def uniform_init(rng: np.random.Generator, shape, scale: float) -> np.ndarray:
    return rng.uniform(-scale, scale, size=shape)
