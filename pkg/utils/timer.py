"""重复执行并统计每次循环的耗时"""

import time
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm


@dataclass(frozen=True)
class Timing:
    """每次循环的平均耗时和标准差，单位毫秒"""
    mean_ms: float
    std_ms: float
    runs: int
    repetitions: int

    def to_json(self):
        return {'time_ms_mean': round(self.mean_ms, 4),
                'time_ms_std': round(self.std_ms, 4),
                'runs': self.runs,
                'loops': self.repetitions}

    def __str__(self):
        return "%.3f ms ± %.3f ms per loop (mean ± std. dev. of %d runs, %d loops each)" \
               % (self.mean_ms, self.std_ms, self.runs, self.repetitions)


def run_timed(stage, repetitions=100, runs=7, progress=False):
    """执行runs轮，每轮重复repetitions次，统计每次循环的平均耗时

    repetitions为1时只测量一次，标准差为0。

    :param stage: 需要计时的无参数函数
    :type stage: callable
    :param repetitions: 每轮的循环次数
    :type repetitions: int
    :param runs: 轮数
    :type runs: int
    :return: (计时结果, 最后一次执行的返回值)
    :rtype: tuple
    """
    if repetitions < 1 or runs < 1:
        raise ValueError("repetitions和runs必须大于等于1")
    if repetitions == 1:
        runs = 1
    per_loop = []
    result = None
    for _ in tqdm(range(runs), desc='timing', disable=not progress):
        start = time.perf_counter()
        for _ in range(repetitions):
            result = stage()
        per_loop.append((time.perf_counter() - start) * 1000 / repetitions)
    per_loop = np.array(per_loop)
    return Timing(float(per_loop.mean()), float(per_loop.std()), runs, repetitions), result
