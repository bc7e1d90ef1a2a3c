//! Parameter families behind the four published plots.

use tfd_complexity::{Knob, Method, ModelParams};

use crate::config::MethodChoice;

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: u8,
    pub title: &'static str,
    pub base: ModelParams,
    /// Varied knobs, outermost first.
    pub vary: &'static [(Knob, &'static [f64])],
    pub method: MethodChoice,
    /// Set when a grid value had to be chosen here because the caption
    /// does not state it.
    pub note: Option<&'static str>,
}

const E_ZERO: ModelParams = ModelParams {
    beta_omega: 1.0,
    beta_omega_ref: 10.0,
    field_ratio: 0.0,
    lambda_ref: 1.0,
};

const LOW: &[f64] = &[0.5, 1.0, 2.0];
const HIGH: &[f64] = &[12.0, 14.0, 16.0];

pub const FIGURE_4_FIELD_RATIO: f64 = 0.1;

pub const PRESETS: [FigurePreset; 4] = [
    FigurePreset {
        id: 1,
        title: "simple limit, E = 0, lambda_R = 1, beta_omega_R = 10",
        base: E_ZERO,
        vary: &[(Knob::BetaOmega, LOW)],
        method: MethodChoice::Fixed(Method::SimpleLimit),
        note: None,
    },
    FigurePreset {
        id: 2,
        title: "increasing qE/Omega at lambda_R = 1, beta_omega_R = 10",
        base: E_ZERO,
        vary: &[
            (Knob::FieldRatio, &[0.01, 0.1, 1.0]),
            (Knob::BetaOmega, LOW),
        ],
        method: MethodChoice::Auto,
        note: Some("qE/Omega grid {0.01, 0.1, 1} is not paper-specified"),
    },
    FigurePreset {
        id: 3,
        title: "E = 0, lambda_R = 1, beta_omega_R = 10",
        base: E_ZERO,
        vary: &[(Knob::BetaOmega, HIGH)],
        method: MethodChoice::Fixed(Method::Numeric),
        note: None,
    },
    FigurePreset {
        id: 4,
        title: "increasing beta_omega_R at lambda_R = 1, qE/Omega = 0.1",
        base: ModelParams {
            field_ratio: FIGURE_4_FIELD_RATIO,
            ..E_ZERO
        },
        vary: &[(Knob::BetaOmegaRef, &[10.0, 20.0]), (Knob::BetaOmega, HIGH)],
        method: MethodChoice::Fixed(Method::Numeric),
        note: Some("beta_omega_R grid {10, 20} and qE/Omega = 0.1 are not paper-specified"),
    },
];

pub fn preset(id: u8) -> Option<&'static FigurePreset> {
    PRESETS.iter().find(|p| p.id == id)
}

impl FigurePreset {
    pub fn curve_count(&self) -> usize {
        self.vary.iter().map(|(_, v)| v.len()).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_indexed() {
        for id in 1..=4 {
            assert_eq!(preset(id).unwrap().id, id);
        }
        assert!(preset(0).is_none() && preset(5).is_none());
    }

    #[test]
    fn curve_counts() {
        let counts: Vec<usize> = PRESETS.iter().map(FigurePreset::curve_count).collect();
        assert_eq!(counts, vec![3, 9, 3, 6]);
    }

    #[test]
    fn unstated_grids_are_labelled() {
        assert!(preset(1).unwrap().note.is_none());
        assert!(preset(3).unwrap().note.is_none());
        for id in [2, 4] {
            assert!(preset(id)
                .unwrap()
                .note
                .unwrap()
                .contains("not paper-specified"));
        }
    }
}
