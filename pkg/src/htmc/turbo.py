"""Rate-1/2 parallel-concatenated convolutional code with iterative decoding.

Two identical recursive systematic constituent encoders (default octal
generators 7 feedback / 5 forward, four states) encode the frame in
natural and interleaved order.  Parity is alternately punctured to reach
rate 1/2 exactly, and only the first encoder's trellis is terminated.

Coded frame layout for L info bits and memory nu (L_coded = 2*L):

    c[0 : L]               systematic bits u[k]
    c[L : 2L - 2*nu]       punctured parity: encoder 1 at odd k,
                           encoder 2 at even k, for k in [0, L - 2*nu)
    c[2L - 2*nu : 2L]      encoder 1 tail, interleaved pairs
                           [t_1, q_1, ..., t_nu, q_nu] of tail input and
                           tail parity bits

Parity slots k >= L - 2*nu are sacrificed to carry the tail.  The decoder
treats untransmitted parity positions as erasures (zero LLR) and runs
max-log a-posteriori passes with scaled extrinsic exchange.  LLRs are
positive for bit 0 (symbol +1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TurboConfig",
    "CodedFrame",
    "make_interleaver",
    "turbo_encode",
    "turbo_decode",
    "EXTRINSIC_SCALE",
]

# Compensates the optimistic extrinsic magnitudes of the max-log recursion.
EXTRINSIC_SCALE = 0.75

_NEG_INF = -1e30


def _bit_parity(x: int) -> int:
    return bin(x).count("1") & 1


class _Trellis:
    """State tables for one recursive systematic constituent encoder."""

    def __init__(self, feedback_octal: str, forward_octal: str) -> None:
        feedback = int(feedback_octal, 8)
        forward = int(forward_octal, 8)
        memory = feedback.bit_length() - 1
        if memory < 1:
            raise ValueError("feedback polynomial must have memory >= 1")
        if forward.bit_length() - 1 > memory:
            raise ValueError("forward polynomial degree exceeds encoder memory")
        if not feedback & 1:
            raise ValueError("feedback polynomial must have a nonzero oldest tap")
        n_states = 1 << memory
        low_taps = feedback & (n_states - 1)

        self.memory = memory
        self.n_states = n_states
        self.next_state = np.empty((n_states, 2), dtype=np.int64)
        self.parity = np.empty((n_states, 2), dtype=np.int64)
        self.term_input = np.empty(n_states, dtype=np.int64)
        for s in range(n_states):
            fb = _bit_parity(low_taps & s)
            self.term_input[s] = fb
            for b in (0, 1):
                d = b ^ fb
                register = (d << memory) | s
                self.parity[s, b] = _bit_parity(forward & register)
                self.next_state[s, b] = register >> 1

        # predecessors of each state, needed by the forward recursion
        self.pred_state = np.empty((n_states, 2), dtype=np.int64)
        self.pred_bit = np.empty((n_states, 2), dtype=np.int64)
        fill = np.zeros(n_states, dtype=np.int64)
        for s in range(n_states):
            for b in (0, 1):
                nxt = self.next_state[s, b]
                self.pred_state[nxt, fill[nxt]] = s
                self.pred_bit[nxt, fill[nxt]] = b
                fill[nxt] += 1
        if not np.all(fill == 2):
            raise ValueError("unsupported polynomials: trellis is not 2-regular")

        self.parity_sign = 1.0 - 2.0 * self.parity.astype(float)


@dataclass(frozen=True)
class TurboConfig:
    """Constituent generators, interleaver, and decoder iteration count."""

    info_length: int
    interleaver: np.ndarray
    feedback: str = "7"
    forward: str = "5"
    iterations: int = 8
    termination: str = "encoder1"
    _trellis: _Trellis = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        trellis = _Trellis(self.feedback, self.forward)
        if self.info_length < 2 * trellis.memory + 2:
            raise ValueError("info_length too short for the tail layout")
        perm = np.asarray(self.interleaver)
        if perm.shape != (self.info_length,) or not np.array_equal(
            np.sort(perm), np.arange(self.info_length)
        ):
            raise ValueError("interleaver must be a permutation of [0, info_length)")
        if self.iterations < 1:
            raise ValueError("need at least one decoder iteration")
        if self.termination != "encoder1":
            raise ValueError("only 'encoder1' termination is supported")
        object.__setattr__(self, "_trellis", trellis)

    @property
    def coded_length(self) -> int:
        return 2 * self.info_length


@dataclass(frozen=True)
class CodedFrame:
    info_bits: np.ndarray
    coded_bits: np.ndarray


def make_interleaver(length: int, seed: int) -> np.ndarray:
    """Seeded uniformly random permutation."""
    if length < 2:
        raise ValueError("interleaver length must be at least 2")
    return np.random.default_rng(seed).permutation(length)


def _rsc_parities(bits: np.ndarray, trellis: _Trellis) -> tuple[np.ndarray, int]:
    next_state = trellis.next_state.tolist()
    parity = trellis.parity.tolist()
    state = 0
    out = np.empty(len(bits), dtype=np.uint8)
    for k, b in enumerate(bits.tolist()):
        out[k] = parity[state][b]
        state = next_state[state][b]
    return out, state


def _rsc_tail(state: int, trellis: _Trellis) -> tuple[list[int], list[int]]:
    tail_bits: list[int] = []
    tail_parity: list[int] = []
    for _ in range(trellis.memory):
        b = int(trellis.term_input[state])
        tail_bits.append(b)
        tail_parity.append(int(trellis.parity[state, b]))
        state = int(trellis.next_state[state, b])
    assert state == 0
    return tail_bits, tail_parity


def turbo_encode(bits, cfg: TurboConfig) -> CodedFrame:
    """Encode one frame of cfg.info_length bits to exactly twice as many."""
    u = np.asarray(bits, dtype=np.uint8)
    if u.shape != (cfg.info_length,):
        raise ValueError(f"expected {cfg.info_length} info bits, got shape {u.shape}")
    if np.any(u > 1):
        raise ValueError("info bits must be 0 or 1")
    trellis = cfg._trellis
    n_tail = 2 * trellis.memory

    parity1, state1 = _rsc_parities(u, trellis)
    tail_bits, tail_parity = _rsc_tail(state1, trellis)
    parity2, _ = _rsc_parities(u[cfg.interleaver], trellis)

    coded = np.empty(cfg.coded_length, dtype=np.uint8)
    coded[: cfg.info_length] = u
    k = np.arange(cfg.info_length - n_tail)
    punctured = np.where(k % 2 == 1, parity1[k], parity2[k])
    coded[cfg.info_length : cfg.coded_length - n_tail] = punctured
    tail = np.empty(n_tail, dtype=np.uint8)
    tail[0::2] = tail_bits
    tail[1::2] = tail_parity
    coded[cfg.coded_length - n_tail :] = tail
    return CodedFrame(info_bits=u.copy(), coded_bits=coded)


def turbo_decode(llrs, cfg: TurboConfig) -> np.ndarray:
    """Hard info-bit decisions after iterative a-posteriori decoding."""
    values = np.asarray(llrs, dtype=float)
    if values.shape != (cfg.coded_length,):
        raise ValueError(f"expected {cfg.coded_length} LLRs, got shape {values.shape}")
    return _decode_batch(values[None, :], cfg)[0]


def _decode_batch(llrs: np.ndarray, cfg: TurboConfig) -> np.ndarray:
    """Decode a (frames, coded_length) LLR batch to (frames, info_length) bits."""
    if not np.isfinite(llrs).all():
        raise ValueError("non-finite LLR")
    trellis = cfg._trellis
    length = cfg.info_length
    n_tail = 2 * trellis.memory
    n_frames = llrs.shape[0]
    perm = cfg.interleaver
    inv_perm = np.argsort(perm)

    sys_llr = llrs[:, :length]
    parity_region = llrs[:, length : 2 * length - n_tail]
    k = np.arange(length - n_tail)
    parity1 = np.zeros((n_frames, length))
    parity2 = np.zeros((n_frames, length))
    parity1[:, k[k % 2 == 1]] = parity_region[:, k % 2 == 1]
    parity2[:, k[k % 2 == 0]] = parity_region[:, k % 2 == 0]

    tail = llrs[:, 2 * length - n_tail :]
    sys1 = np.concatenate([sys_llr, tail[:, 0::2]], axis=1)
    par1 = np.concatenate([parity1, tail[:, 1::2]], axis=1)
    sys2 = sys_llr[:, perm]
    par2 = parity2

    tail_zeros = np.zeros((n_frames, trellis.memory))
    apriori1 = np.zeros((n_frames, length))
    posterior2 = np.zeros((n_frames, length))
    for _ in range(cfg.iterations):
        posterior1 = _maxlog_bcjr(
            sys1, par1, np.concatenate([apriori1, tail_zeros], axis=1), trellis, True
        )
        extrinsic1 = EXTRINSIC_SCALE * (posterior1[:, :length] - apriori1 - sys_llr)
        apriori2 = extrinsic1[:, perm]
        posterior2 = _maxlog_bcjr(sys2, par2, apriori2, trellis, False)
        extrinsic2 = EXTRINSIC_SCALE * (posterior2 - apriori2 - sys2)
        apriori1 = extrinsic2[:, inv_perm]
    return (posterior2[:, inv_perm] < 0.0).astype(np.uint8)


def _maxlog_bcjr(
    sys_llr: np.ndarray,
    par_llr: np.ndarray,
    apriori: np.ndarray,
    trellis: _Trellis,
    terminated: bool,
) -> np.ndarray:
    """Max-log forward/backward pass; returns posterior LLR per trellis step.

    Starts in state 0; the backward pass starts from state 0 when the
    trellis is terminated and from a uniform metric otherwise.
    """
    n_frames, n_steps = sys_llr.shape
    n_states = trellis.n_states
    half_sys = 0.5 * (sys_llr + apriori)
    half_par = 0.5 * par_llr
    bit_sign = np.array([1.0, -1.0])
    parity_sign = trellis.parity_sign
    pred_state = trellis.pred_state
    pred_bit = trellis.pred_bit
    next_state = trellis.next_state

    alpha = np.full((n_steps + 1, n_frames, n_states), _NEG_INF)
    alpha[0, :, 0] = 0.0
    for n in range(n_steps):
        gamma = (
            half_sys[:, n, None, None] * bit_sign[None, None, :]
            + half_par[:, n, None, None] * parity_sign[None, :, :]
        )
        candidates = alpha[n][:, pred_state] + gamma[:, pred_state, pred_bit]
        nxt = candidates.max(axis=2)
        alpha[n + 1] = nxt - nxt.max(axis=1, keepdims=True)

    if terminated:
        beta = np.full((n_frames, n_states), _NEG_INF)
        beta[:, 0] = 0.0
    else:
        beta = np.zeros((n_frames, n_states))

    posterior = np.empty((n_frames, n_steps))
    for n in range(n_steps - 1, -1, -1):
        gamma = (
            half_sys[:, n, None, None] * bit_sign[None, None, :]
            + half_par[:, n, None, None] * parity_sign[None, :, :]
        )
        branch = gamma + beta[:, next_state]
        metric = alpha[n][:, :, None] + branch
        posterior[:, n] = metric[:, :, 0].max(axis=1) - metric[:, :, 1].max(axis=1)
        beta = branch.max(axis=2)
        beta -= beta.max(axis=1, keepdims=True)
    return posterior
