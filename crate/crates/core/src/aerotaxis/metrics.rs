use super::{CellField, FieldSeries, TIME_SCALE_S};

/// Band geometry on a sampled field, in nondimensional length units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandMetrics {
    pub width_h: f64,
    /// meniscus to the leading (meniscus-side) edge of the band
    pub distance_d: f64,
    /// band mean over the mean between meniscus and band
    pub ratio_front: f64,
    /// band mean over the mean behind the band
    pub ratio_behind: f64,
    /// seconds; only known when measured over a time series
    pub formation_time: Option<f64>,
    /// first and last node of the band
    pub nodes: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandDetection {
    Band(BandMetrics),
    NoBand,
}

impl BandDetection {
    pub fn metrics(&self) -> Option<&BandMetrics> {
        match self {
            BandDetection::Band(m) => Some(m),
            BandDetection::NoBand => None,
        }
    }
}

/// Peak-to-mean ratio below which a profile is not called a band.
pub const MIN_PEAK_TO_MEAN: f64 = 2.0;

fn mean(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        None
    } else {
        Some(v.iter().sum::<f64>() / v.len() as f64)
    }
}

fn ratio(inside: f64, outside: Option<f64>) -> f64 {
    match outside {
        Some(o) if o > 0.0 => inside / o,
        _ => f64::INFINITY,
    }
}

/// Locate the band as the contiguous run of nodes around the peak whose
/// density is at least half the peak.
pub fn band_metrics(field: &CellField, dx: f64) -> BandDetection {
    let b = field.density();
    let n = b.len();
    let Some(avg) = mean(&b) else { return BandDetection::NoBand };
    let (peak_i, peak) =
        b.iter().cloned().enumerate().fold((0, f64::MIN), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    if !(avg > 0.0) || peak / avg < MIN_PEAK_TO_MEAN {
        return BandDetection::NoBand;
    }
    let half = 0.5 * peak;
    let mut lo = peak_i;
    while lo > 0 && b[lo - 1] >= half {
        lo -= 1;
    }
    let mut hi = peak_i;
    while hi + 1 < n && b[hi + 1] >= half {
        hi += 1;
    }
    let inside = mean(&b[lo..=hi]).unwrap_or(peak);
    BandDetection::Band(BandMetrics {
        width_h: (hi - lo + 1) as f64 * dx,
        distance_d: lo as f64 * dx,
        ratio_front: ratio(inside, mean(&b[..lo])),
        ratio_behind: ratio(inside, mean(&b[hi + 1..])),
        formation_time: None,
        nodes: (lo, hi),
    })
}

/// Metrics of the final sample, with the formation time set to the first
/// sampled time (in seconds) from which a band is detected continuously.
pub fn band_metrics_series(series: &FieldSeries, dx: f64) -> BandDetection {
    let Some(last) = series.last() else { return BandDetection::NoBand };
    let BandDetection::Band(mut m) = band_metrics(last, dx) else { return BandDetection::NoBand };
    let mut formed = None;
    for (t, f) in series.times.iter().zip(&series.fields) {
        match band_metrics(f, dx) {
            BandDetection::Band(_) => formed = formed.or(Some(*t)),
            BandDetection::NoBand => formed = None,
        }
    }
    m.formation_time = formed.map(|t| t * TIME_SCALE_S);
    BandDetection::Band(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(b: &[f64]) -> CellField {
        CellField {
            r: b.iter().map(|v| v / 2.0).collect(),
            l: b.iter().map(|v| v / 2.0).collect(),
            oxygen: vec![0.0; b.len()],
        }
    }

    #[test]
    fn uniform_is_no_band() {
        assert_eq!(band_metrics(&field(&[1.0; 10]), 0.1), BandDetection::NoBand);
    }

    #[test]
    fn box_band() {
        let b = [0.1, 0.1, 10.0, 10.0, 10.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        let m = *band_metrics(&field(&b), 0.1).metrics().unwrap();
        assert_eq!(m.nodes, (2, 4));
        assert!((m.width_h - 0.3).abs() < 1e-12);
        assert!((m.distance_d - 0.2).abs() < 1e-12);
        assert!((m.ratio_front - 100.0).abs() < 1e-9);
        assert!((m.ratio_behind - 10.0).abs() < 1e-9);
    }

    #[test]
    fn band_touching_meniscus_has_infinite_front_ratio() {
        let b = [10.0, 10.0, 1.0, 1.0, 1.0, 1.0];
        let m = *band_metrics(&field(&b), 0.1).metrics().unwrap();
        assert!(m.ratio_front.is_infinite());
        assert_eq!(m.distance_d, 0.0);
    }

    #[test]
    fn formation_time_is_first_persistent_detection() {
        let flat = field(&[1.0; 6]);
        let banded = field(&[0.1, 8.0, 8.0, 1.0, 1.0, 1.0]);
        let s = FieldSeries {
            times: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            fields: vec![flat.clone(), banded.clone(), flat, banded.clone(), banded],
        };
        let m = *band_metrics_series(&s, 0.1).metrics().unwrap();
        assert_eq!(m.formation_time, Some(3.0 * TIME_SCALE_S));
    }
}
