//! The report returned by every series evaluator.

use rug::{Complex, Float, Integer};
use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::arith::decimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesStatus {
    /// Integer-valued target with margin below 0.4.
    Converged,
    /// Integer-valued target whose partial sum is not yet within 0.4 of an integer.
    NoConvergence,
    /// Real-valued target; `nearest_integer` is informational only.
    Evaluated,
}

impl SeriesStatus {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Converged => "converged",
            Self::NoConvergence => "no-convergence",
            Self::Evaluated => "evaluated",
        }
    }
}

/// Partial sum including every term up to `bound`.
#[derive(Clone, Debug)]
pub struct TracePoint {
    pub bound: i64,
    pub value: Complex,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub target: String,
    pub params: Vec<(String, String)>,
    pub c_max: i64,
    pub a_max: Option<i64>,
    pub r_max: Option<i64>,
    pub trace: Vec<TracePoint>,
    pub value: Complex,
    pub nearest_integer: Option<Integer>,
    /// Distance from the real part to the nearest integer.
    pub margin: Float,
    pub oracle: Option<Float>,
    /// `|value - oracle|`.
    pub gap: Option<Float>,
    pub precision_bits: u32,
    pub elapsed_ms: u128,
    pub status: SeriesStatus,
}

/// Margin under which a partial sum may be rounded.
pub const ROUNDING_MARGIN: f64 = 0.4;

impl SeriesReport {
    /// Fills in the rounding and oracle fields from `value`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        target: String,
        params: Vec<(String, String)>,
        bounds: (i64, Option<i64>, Option<i64>),
        trace: Vec<TracePoint>,
        value: Complex,
        integer_valued: bool,
        oracle: Option<Float>,
        precision_bits: u32,
        started: std::time::Instant,
    ) -> Self {
        let re = Float::with_val(value.prec().0, value.real());
        let rounded = re.clone().round();
        let margin = Float::with_val(re.prec(), &re - &rounded).abs();
        let nearest_integer = if margin < ROUNDING_MARGIN { rounded.to_integer() } else { None };
        let status = match (integer_valued, nearest_integer.is_some()) {
            (false, _) => SeriesStatus::Evaluated,
            (true, true) => SeriesStatus::Converged,
            (true, false) => SeriesStatus::NoConvergence,
        };
        let gap = oracle.as_ref().map(|o| {
            let diff = Complex::with_val(value.prec().0, &value - o);
            Float::with_val(value.prec().0, diff.abs_ref())
        });
        Self {
            target,
            params,
            c_max: bounds.0,
            a_max: bounds.1,
            r_max: bounds.2,
            trace,
            value,
            nearest_integer,
            margin,
            oracle,
            gap,
            precision_bits,
            elapsed_ms: started.elapsed().as_millis(),
            status,
        }
    }

    pub fn gap_f64(&self) -> Option<f64> {
        self.gap.as_ref().map(Float::to_f64)
    }
}

struct Params<'a>(&'a [(String, String)]);

impl Serialize for Params<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

struct ComplexValue<'a>(&'a Complex);

impl Serialize for ComplexValue<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &decimal(self.0.real()))?;
        st.serialize_field("im", &decimal(self.0.imag()))?;
        st.end()
    }
}

impl Serialize for TracePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TracePoint", 2)?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("value", &ComplexValue(&self.value))?;
        st.end()
    }
}

impl Serialize for SeriesReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SeriesReport", 15)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("params", &Params(&self.params))?;
        st.serialize_field("c_max", &self.c_max)?;
        st.serialize_field("a_max", &self.a_max)?;
        st.serialize_field("r_max", &self.r_max)?;
        st.serialize_field("trace", &self.trace)?;
        st.serialize_field("value", &ComplexValue(&self.value))?;
        st.serialize_field("nearest_integer", &self.nearest_integer.as_ref().map(Integer::to_string))?;
        st.serialize_field("margin", &decimal(&self.margin))?;
        st.serialize_field("oracle", &self.oracle.as_ref().map(decimal))?;
        st.serialize_field("gap", &self.gap.as_ref().map(decimal))?;
        st.serialize_field("precision_bits", &self.precision_bits)?;
        st.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        st.serialize_field("status", self.status.tag())?;
        st.end()
    }
}

/// Bounds at which the partial sums are recorded: roughly eight per octave,
/// always including the last bound.
pub(crate) fn trace_bounds(step: i64, last: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut b = step;
    while b < last {
        out.push(b);
        let next = ((b as f64) * 1.09).ceil() as i64;
        b = (num_integer::Integer::div_ceil(&next, &step) * step).max(b + step);
    }
    out.push(last);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_bounds_cover_range() {
        let b = trace_bounds(7, 490);
        assert_eq!(b[0], 7);
        assert_eq!(*b.last().unwrap(), 490);
        assert!(b.windows(2).all(|w| w[0] < w[1] && w[1] % 7 == 0));
        assert_eq!(trace_bounds(1, 1), vec![1]);
    }
}
