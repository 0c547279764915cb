"""项目中使用的异常类型"""


class LogFormatError(ValueError):
    """事件日志格式错误，例如缺少列或时间戳无法解析

    :param message: 错误信息
    :type message: str
    :param line: 出错的行号，从1开始，表头为第1行
    :type line: int|None
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = "第%d行: %s" % (line, message)
        super(LogFormatError, self).__init__(message)
        self.line = line


class EmptyLogError(ValueError):
    """事件日志为空"""


class CyclicLogError(ValueError):
    """日志中存在重复活动的轨迹，不是无环日志

    :param case_ids: 出现重复活动的轨迹ID
    :type case_ids: list
    """

    def __init__(self, case_ids):
        self.case_ids = list(case_ids)
        super(CyclicLogError, self).__init__("日志不是无环日志，以下轨迹包含重复的活动: %s"
                                             % ', '.join(self.case_ids))


class ModelFormatError(ValueError):
    """DFG模型不满足定义，或者模型文件格式错误"""


class DuplicateLabelError(ValueError):
    """模型中存在重复的标签，这种模型需要使用merge_with_duplicates合并"""

    def __init__(self, labels):
        self.labels = sorted(labels)
        super(DuplicateLabelError, self).__init__(
            "模型中的标签 %s 出现了多次，请使用merging.rename.merge_with_duplicates合并"
            % ', '.join(self.labels))


class MergeAssertionError(AssertionError):
    """合并后的模型存在环，这是程序的逻辑错误"""
