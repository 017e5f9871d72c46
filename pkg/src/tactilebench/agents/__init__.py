from .buffers import ReplayBuffer, RolloutBuffer, Transition
from .dqn import DQNAgent, DQNConfig, dqn_update, epsilon, q_network_spec
from .ppo import PPOAgent, PPOConfig
from .pretrain import (
    bc_network_spec,
    demos_to_arrays,
    pretrain_from_demos,
    q_network_from_pretrained,
)

__all__ = [
    "DQNAgent",
    "DQNConfig",
    "PPOAgent",
    "PPOConfig",
    "ReplayBuffer",
    "RolloutBuffer",
    "Transition",
    "bc_network_spec",
    "demos_to_arrays",
    "dqn_update",
    "epsilon",
    "pretrain_from_demos",
    "q_network_from_pretrained",
    "q_network_spec",
]
