"""
数据集输出单元测试
"""

import json
import math

import pytest

from src.dataset_writer import Dataset, DatasetWriter, format_value, jsonable, read_csv_rows
from src.errors import InvalidParameter


@pytest.fixture
def writer(tmp_path):
    """输出到临时目录的写出器"""
    return DatasetWriter({'output': {'directory': str(tmp_path), 'default_format': 'csv',
                                     'float_digits': 12}}, version='test')


@pytest.fixture
def dataset():
    """两个 series 的小数据集"""
    return Dataset(
        name='demo',
        columns=['series', 'x', 'y'],
        rows=[['mu=+0.4 d=3', 0, 1.5], ['mu=+0.4 d=3', 1, 2.5], ['mu=0 d=3', 0, math.nan]],
        metadata={'d': 3, 'mu': [0.4, 0.0]},
    )


class TestDataset:
    """数据集测试类"""

    def test_row_length_checked(self):
        """测试行长度校验"""
        with pytest.raises(InvalidParameter):
            Dataset(name='bad', columns=['a', 'b'], rows=[[1]])

    def test_labels_in_order(self, dataset):
        """测试 series 按首次出现排序"""
        assert dataset.labels() == ['mu=+0.4 d=3', 'mu=0 d=3']

    def test_xy(self, dataset):
        """测试按 series 取列"""
        xs, ys = dataset.xy('mu=+0.4 d=3')
        assert xs == [0, 1]
        assert ys == [1.5, 2.5]

    def test_unknown_column(self, dataset):
        """测试未知列名"""
        with pytest.raises(InvalidParameter):
            dataset.column('z')


class TestFormatting:
    """数值格式化测试类"""

    def test_format_value(self):
        """测试各种取值"""
        assert format_value(None) == ''
        assert format_value(True) == 'true'
        assert format_value(math.nan) == 'nan'
        assert format_value(-math.inf) == '-inf'
        assert format_value(1 / 3, digits=4) == '0.3333'
        assert format_value(7) == '7'

    def test_jsonable(self):
        """测试非有限值转为 null"""
        assert jsonable({'a': [1.0, math.inf], 2: (math.nan,)}) == {'a': [1.0, None], '2': [None]}


class TestDatasetWriter:
    """写出器测试类"""

    def test_csv_output(self, writer, dataset, tmp_path):
        """测试 CSV 文件头与正文"""
        path = writer.write(dataset)
        assert path == tmp_path / 'demo.csv'
        text = path.read_text(encoding='utf-8')
        assert text.startswith('# tool: dkg-toolkit test\n# dataset: demo\n')
        assert '# units: natural units' in text
        assert '# parameters: {"d": 3, "mu": [0.4, 0.0]}' in text

        rows = read_csv_rows(path)
        assert rows[0] == ['series', 'x', 'y']
        assert rows[1] == ['mu=+0.4 d=3', '0', '1.5']
        assert rows[3][2] == 'nan'

    def test_json_output(self, writer, dataset, tmp_path):
        """测试 JSON 输出"""
        path = writer.write(dataset, tmp_path / 'out' / 'demo.json')
        payload = json.loads(path.read_text(encoding='utf-8'))
        assert payload['columns'] == ['series', 'x', 'y']
        assert payload['rows'][2][2] is None
        assert payload['metadata']['dataset'] == 'demo'
        assert payload['metadata']['version'] == 'test'

    def test_format_argument_overrides(self, writer, dataset, tmp_path):
        """测试显式格式"""
        path = writer.write(dataset, tmp_path / 'demo.txt', fmt='json')
        assert json.loads(path.read_text(encoding='utf-8'))['rows']

    def test_unknown_format(self, writer, dataset):
        """测试不支持的格式"""
        with pytest.raises(InvalidParameter):
            writer.write(dataset, fmt='xlsx')

    def test_render_is_deterministic(self, writer, dataset):
        """测试固定时间戳时渲染结果相同"""
        header = writer.header(dataset, timestamp='2024-01-01T00:00:00+00:00')
        assert writer.render_csv(dataset, header) == writer.render_csv(dataset, header)

    def test_env_output_dir(self, dataset, tmp_path, monkeypatch):
        """测试 DKG_OUTPUT_DIR 覆盖输出目录"""
        monkeypatch.setenv('DKG_OUTPUT_DIR', str(tmp_path / 'env'))
        path = DatasetWriter({}, version='test').write(dataset)
        assert path.parent == tmp_path / 'env'


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
