import numpy as np


class ScanStatistics:
    """Collects scattering points from scans and summarizes them."""

    def __init__(self):
        self.attempted = 0
        self.failed = 0
        self.r_values = []
        self.t_values = []
        self.conservation_errors = []
        self.failures_by_status = {}

    def record_scan(self, scan):
        """Records every point of a ScatterScan."""
        self.attempted += scan.attempted
        for point in scan.points:
            self.r_values.append(point.r_prob)
            self.t_values.append(point.t_prob)
            self.conservation_errors.append(abs(point.conservation - 1.0))
        for point in scan.failures:
            self.failed += 1
            self.failures_by_status[point.status] = self.failures_by_status.get(point.status, 0) + 1

    @property
    def success_fraction(self):
        return (self.attempted - self.failed) / self.attempted if self.attempted else 1.0

    def _range_summary(self, values):
        """Count, range and grid mean of one probability over the scanned points."""
        if not values:
            return {'count': 0, 'min': 0.0, 'max': 0.0, 'mean': 0.0}
        data = np.asarray(values, dtype=float)
        return {
            'count': int(data.size),
            'min': float(np.min(data)),
            'max': float(np.max(data)),
            'mean': float(np.mean(data)),
        }

    def get_summary(self):
        """Returns a dictionary with the aggregated statistics."""
        return {
            'points_attempted': self.attempted,
            'points_failed': self.failed,
            'success_fraction': self.success_fraction,
            'reflection': self._range_summary(self.r_values),
            'transmission': self._range_summary(self.t_values),
            'max_conservation_error': max(self.conservation_errors, default=0.0),
            'failures_by_status': self.failures_by_status,
        }
