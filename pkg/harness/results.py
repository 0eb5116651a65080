"""
Append-only results table backed by a pandas DataFrame and written as CSV.
"""
import logging
from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd

from core.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

COLUMNS = ['model', 'variant', 'snr_db', 'loss_rate', 'num_signals', 'metric', 'value', 'seed']
FLOAT_FORMAT = '%.10g'
# Empty fields in these columns read back as missing; a missing value stays NaN.
NUMERIC_COLUMNS = ('snr_db', 'loss_rate', 'num_signals', 'value')


class ResultsTable:

    def __init__(self, rows: Optional[List[dict]] = None):
        self._rows: List[dict] = []
        for row in rows or []:
            self.append(**row)

    def append(self, model: str, metric: str, value: float, seed: int, variant: str = '',
               snr_db: Optional[float] = None, loss_rate: Optional[float] = None,
               num_signals: Optional[int] = None) -> None:
        self._rows.append({
            'model': model,
            'variant': variant or '',
            'snr_db': None if snr_db is None else float(snr_db),
            'loss_rate': None if loss_rate is None else float(loss_rate),
            'num_signals': None if num_signals is None else int(num_signals),
            'metric': metric,
            'value': float(value),
            'seed': int(seed),
        })

    def extend(self, other: 'ResultsTable') -> None:
        for row in other.rows:
            self.append(**row)

    @property
    def rows(self) -> List[dict]:
        return [dict(row) for row in self._rows]

    def __len__(self):
        return len(self._rows)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self._rows, columns=COLUMNS)
        return frame.astype({'num_signals': 'Int64'})

    def to_csv(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        logger.info(f"Wrote {len(self)} result rows to {path}")
        return path

    @classmethod
    def from_csv(cls, path: Path) -> 'ResultsTable':
        frame = pd.read_csv(path, keep_default_na=False, na_values={column: [''] for column in NUMERIC_COLUMNS})
        missing = set(COLUMNS) - set(frame.columns)
        if missing:
            raise InvalidArgumentError(f"{path} lacks columns {sorted(missing)}")
        rows = []
        for record in frame.to_dict(orient='records'):
            rows.append({
                key: (None if key != 'value' and isinstance(value, float) and np.isnan(value) else value)
                for key, value in record.items() if key in COLUMNS
            })
        return cls(rows)

    def select(self, **criteria) -> pd.DataFrame:
        frame = self.to_frame()
        for key, value in criteria.items():
            frame = frame[frame[key] == value]
        return frame

    def cell_means(self, metric: str, by=('model', 'snr_db', 'loss_rate')) -> pd.DataFrame:
        """Mean value of ``metric`` per cell, e.g. averaged over signal counts."""
        frame = self.select(metric=metric)
        return frame.groupby(list(by), dropna=False)['value'].mean().reset_index()
