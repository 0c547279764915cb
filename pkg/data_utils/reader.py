"""读写CSV格式的事件日志"""

import io
import json
import os
from dataclasses import dataclass, fields

import pandas as pd

from data_utils.event_log import EventLog, Trace
from utils.exceptions import EmptyLogError, LogFormatError
from utils.utility import atomic_write, write_json

# 没有时间戳的轨迹从这个时间开始，每个事件间隔1秒
SYNTHETIC_START = pd.Timestamp('2000-01-01T00:00:00')


@dataclass(frozen=True)
class LogFormat:
    """CSV日志的格式配置

    配置文件为json格式，例如:

    .. code-block::

        {
          "delimiter": ",",
          "case_column": "case_id",
          "timestamp_column": "timestamp",
          "activity_column": "activity",
          "timestamp_format": "ISO8601",
          "encoding": "utf-8"
        }

    timestamp_format为ISO8601时按ISO 8601解析，否则作为strptime格式字符串。
    """
    delimiter: str = ','
    case_column: str = 'case_id'
    timestamp_column: str = 'timestamp'
    activity_column: str = 'activity'
    timestamp_format: str = 'ISO8601'
    encoding: str = 'utf-8'

    @classmethod
    def from_json(cls, config_json):
        """从json字符串解析配置

        :raises ValueError: 配置不是合法的json，或者包含未知的字段
        """
        try:
            config = json.loads(config_json)
            known = {f.name for f in fields(cls)}
            unknown = set(config) - known
            if unknown:
                raise ValueError("unknown keys %s" % sorted(unknown))
            return cls(**config)
        except Exception as e:
            raise ValueError("Failed to parse the log format config json: %s" % str(e))

    @classmethod
    def from_file(cls, path):
        if path is None:
            return cls()
        with open(path, 'r', encoding='utf8') as f:
            return cls.from_json(f.read())

    @property
    def columns(self):
        return [self.case_column, self.timestamp_column, self.activity_column]


def _parse_timestamps(column, timestamp_format):
    if timestamp_format in (None, '', 'ISO8601'):
        return pd.to_datetime(column, format='ISO8601', errors='coerce')
    return pd.to_datetime(column, format=timestamp_format, errors='coerce')


def parse_log(stream, config=None):
    """解析CSV事件日志

    记录按案例ID分组，案例按第一次出现的顺序排列；同一个案例中的事件按时间戳升序排列，
    时间戳相同时保持输入的顺序。

    :param stream: 字符流或者文件路径
    :type stream: file|str
    :param config: 格式配置
    :type config: LogFormat|None
    :return: 事件日志
    :rtype: EventLog
    :raises LogFormatError: 缺少配置的列，时间戳无法解析，活动名称为空
    :raises EmptyLogError: 输入中没有任何记录
    """
    config = config or LogFormat()
    if isinstance(stream, str):
        with open(stream, 'r', encoding=config.encoding) as f:
            return parse_log(f, config)
    try:
        df = pd.read_csv(stream, sep=config.delimiter, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise EmptyLogError("事件日志为空")
    for column in config.columns:
        if column not in df.columns:
            raise LogFormatError("缺少列: %s" % column)
    if len(df) == 0:
        raise EmptyLogError("事件日志为空")

    extra_columns = [c for c in df.columns if c not in config.columns]
    # 第1行是表头
    df['_line'] = range(2, len(df) + 2)
    df['_time'] = _parse_timestamps(df[config.timestamp_column].str.strip(), config.timestamp_format)
    bad = df[df['_time'].isna()]
    if len(bad) > 0:
        row = bad.iloc[0]
        raise LogFormatError("无法解析时间戳: %r" % row[config.timestamp_column], line=int(row['_line']))
    df[config.activity_column] = df[config.activity_column].str.strip()
    for _, row in df.iterrows():
        activity = row[config.activity_column]
        if activity == '':
            raise LogFormatError("活动名称为空", line=int(row['_line']))
        if '\n' in activity or '\r' in activity:
            raise LogFormatError("活动名称包含换行符: %r" % activity, line=int(row['_line']))
    df[config.case_column] = df[config.case_column].str.strip()

    case_order = {case_id: i for i, case_id in enumerate(pd.unique(df[config.case_column]))}
    df['_case'] = df[config.case_column].map(case_order)
    # mergesort是稳定排序，时间相同的事件保持输入顺序
    df = df.sort_values(['_case', '_time'], kind='mergesort')

    traces = []
    for case_id, group in df.groupby('_case', sort=True):
        attributes = tuple(tuple((c, v) for c, v in zip(extra_columns, values))
                           for values in group[extra_columns].itertuples(index=False, name=None))
        traces.append(Trace(case_id=group[config.case_column].iloc[0],
                            events=tuple(group[config.activity_column]),
                            timestamps=tuple(group[config.timestamp_column].str.strip()),
                            attributes=attributes if extra_columns else None))
    return EventLog(traces)


def log_to_csv(log, config=None):
    """把事件日志转换为CSV文本

    没有时间戳的轨迹使用事件的序号作为时间戳，其他属性列原样写回。
    """
    config = config or LogFormat()
    extra_columns = []
    for trace in log:
        for attributes in trace.attributes or ():
            for name, _ in attributes:
                if name not in extra_columns:
                    extra_columns.append(name)
    rows = []
    for trace in log:
        for i, event in enumerate(trace.events):
            if trace.timestamps is not None:
                timestamp = trace.timestamps[i]
            else:
                timestamp = (SYNTHETIC_START + pd.Timedelta(seconds=i)).isoformat()
            row = {config.case_column: trace.case_id,
                   config.timestamp_column: timestamp,
                   config.activity_column: event}
            if trace.attributes is not None:
                row.update(dict(trace.attributes[i]))
            rows.append(row)
    df = pd.DataFrame(rows, columns=config.columns + extra_columns).fillna('')
    buffer = io.StringIO()
    df.to_csv(buffer, sep=config.delimiter, index=False, lineterminator='\n')
    return buffer.getvalue()


def write_log(log, stream, config=None):
    """把事件日志写入字符流或者文件路径，写文件时使用原子写入"""
    text = log_to_csv(log, config)
    if isinstance(stream, str):
        atomic_write(stream, text, encoding=(config or LogFormat()).encoding)
    else:
        stream.write(text)


def read_grouping(path, case_column='case_id', group_column='group'):
    """读取案例分组文件，返回案例ID到组名的字典

    :raises LogFormatError: 缺少列
    """
    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    for column in (case_column, group_column):
        if column not in df.columns:
            raise LogFormatError("分组文件缺少列: %s" % column)
    return {case_id.strip(): group.strip() for case_id, group in zip(df[case_column], df[group_column])}


def write_partition(partition, output_dir, config=None):
    """每个子日志保存为一个CSV文件，同时保存manifest.json

    manifest格式为 {子日志序号: [案例ID, ...]}

    :return: manifest文件路径
    :rtype: str
    """
    os.makedirs(output_dir, exist_ok=True)
    manifest = {}
    for i, sublog in enumerate(partition.sublogs):
        write_log(sublog, os.path.join(output_dir, 'sublog_%d.csv' % i), config)
        manifest[str(i)] = list(partition.origin[i])
    manifest_path = os.path.join(output_dir, 'manifest.json')
    write_json(manifest_path, manifest)
    return manifest_path
