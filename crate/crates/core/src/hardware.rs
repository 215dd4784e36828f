//! Accelerator descriptors and the classic two-arm roofline.
//!
//! Devices aggregate linearly: `num_devices` multiplies capacity, bandwidth
//! and compute. Interconnect effects are not modeled.

use std::collections::BTreeMap;

use crate::error::{Error, Result, SpecError};

#[derive(Debug, Clone, PartialEq)]
pub struct HardwareSpec {
    pub name: String,
    /// Peak FLOP/s per device, keyed by operand precision in bits.
    pub peak_flops: BTreeMap<u32, f64>,
    /// Bytes/s per device.
    pub mem_bandwidth: f64,
    /// Bytes per device.
    pub mem_capacity: u64,
    pub num_devices: u64,
    /// Where the constants come from (vendor sheet, synthetic, ...).
    pub provenance: Option<String>,
}

impl HardwareSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.peak_flops.is_empty() {
            return Err(SpecError::invalid("peak_flops", "must list at least one precision"));
        }
        for (bits, rate) in &self.peak_flops {
            if !(rate.is_finite() && *rate > 0.0) {
                return Err(SpecError::invalid(
                    format!("peak_flops.{bits}"),
                    format!("must be positive, got {rate}"),
                ));
            }
        }
        if !(self.mem_bandwidth.is_finite() && self.mem_bandwidth > 0.0) {
            return Err(SpecError::invalid("mem_bandwidth", "must be positive"));
        }
        if self.mem_capacity == 0 {
            return Err(SpecError::invalid("mem_capacity", "must be positive"));
        }
        if self.num_devices == 0 {
            return Err(SpecError::invalid("num_devices", "must be at least 1"));
        }
        Ok(())
    }

    pub fn peak(&self, bits: u32) -> Result<f64> {
        self.peak_flops
            .get(&bits)
            .copied()
            .ok_or_else(|| Error::UnknownPrecision {
                hardware: self.name.clone(),
                bits,
                available: self.peak_flops.keys().copied().collect(),
            })
    }

    /// Operational intensity where the bandwidth arm meets the compute roof.
    pub fn ridge_point(&self, bits: u32) -> Result<f64> {
        Ok(self.peak(bits)? / self.mem_bandwidth)
    }

    /// Per-device attainable FLOP/s at operational intensity `oi`.
    pub fn attainable_flops(&self, bits: u32, oi: f64) -> Result<f64> {
        if !(oi > 0.0) {
            return Err(Error::NonPositiveOi(oi));
        }
        Ok(self.peak(bits)?.min(oi * self.mem_bandwidth))
    }

    pub fn aggregate_capacity(&self) -> u128 {
        self.mem_capacity as u128 * self.num_devices as u128
    }

    pub fn with_devices(&self, num_devices: u64) -> HardwareSpec {
        HardwareSpec {
            num_devices,
            ..self.clone()
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn unit_device() -> HardwareSpec {
        HardwareSpec {
            name: "unit".into(),
            peak_flops: BTreeMap::from([(16, 1e12)]),
            mem_bandwidth: 1e12,
            mem_capacity: 1 << 40,
            num_devices: 1,
            provenance: Some("synthetic".into()),
        }
    }

    #[test]
    fn ridge_values() {
        assert_eq!(unit_device().ridge_point(16).unwrap(), 1.0);
        let hw = HardwareSpec {
            peak_flops: BTreeMap::from([(16, 2e15)]),
            mem_bandwidth: 8e12,
            ..unit_device()
        };
        assert_eq!(hw.ridge_point(16).unwrap(), 250.0);
    }

    #[test]
    fn unknown_precision_lists_available() {
        let err = unit_device().ridge_point(4).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("4-bit") && msg.contains("[16]"), "{msg}");
    }

    #[test]
    fn roofline_arms() {
        let hw = HardwareSpec {
            peak_flops: BTreeMap::from([(16, 2e15)]),
            mem_bandwidth: 8e12,
            ..unit_device()
        };
        let ridge = hw.ridge_point(16).unwrap();
        assert_eq!(hw.attainable_flops(16, ridge).unwrap(), 2e15);
        assert_eq!(hw.attainable_flops(16, ridge / 2.0).unwrap(), 1e15);
        assert_eq!(hw.attainable_flops(16, ridge * 10.0).unwrap(), 2e15);
        assert!(hw.attainable_flops(16, 0.0).is_err());
    }

    #[test]
    fn validation() {
        let mut hw = unit_device();
        hw.num_devices = 0;
        assert_eq!(hw.validate().unwrap_err().field, "num_devices");
        let mut hw = unit_device();
        hw.peak_flops.clear();
        assert_eq!(hw.validate().unwrap_err().field, "peak_flops");
    }

    proptest! {
        #[test]
        fn attainable_monotone_and_capped(
            peak in 1e9f64..1e16, bw in 1e9f64..1e13, a in 1e-3f64..1e5, b in 1e-3f64..1e5
        ) {
            let hw = HardwareSpec {
                peak_flops: BTreeMap::from([(16, peak)]),
                mem_bandwidth: bw,
                ..unit_device()
            };
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let f_lo = hw.attainable_flops(16, lo).unwrap();
            let f_hi = hw.attainable_flops(16, hi).unwrap();
            prop_assert!(f_lo <= f_hi);
            prop_assert!(f_hi <= peak);
            prop_assert!(f_lo / bw <= lo * (1.0 + 1e-15));
        }
    }
}
