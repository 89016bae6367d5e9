//! Bundled experiment configs.

use crate::config::ExperimentConfig;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Runner {
    Simulate,
    Analytic,
    PowerSweep,
}

#[derive(Debug, Clone, Copy)]
pub struct Figure {
    pub number: u8,
    pub runner: Runner,
    pub title: &'static str,
    pub config: &'static str,
}

pub const FIGURES: [Figure; 5] = [
    Figure {
        number: 1,
        runner: Runner::Simulate,
        title: "area fraction covered, three deployments at R = 80 and R = 20",
        config: include_str!("../configs/figure1.toml"),
    },
    Figure {
        number: 2,
        runner: Runner::Analytic,
        title: "Matérn sensing probability against event radius",
        config: include_str!("../configs/figure2.toml"),
    },
    Figure {
        number: 3,
        runner: Runner::Analytic,
        title: "deployment comparison at matched cluster spread",
        config: include_str!("../configs/figure3.toml"),
    },
    Figure {
        number: 4,
        runner: Runner::Analytic,
        title: "sensors against sensing range at fixed m * R",
        config: include_str!("../configs/figure4.toml"),
    },
    Figure {
        number: 5,
        runner: Runner::PowerSweep,
        title: "point coverage under a power budget",
        config: include_str!("../configs/figure5.toml"),
    },
];

pub const VALIDATE_CONFIG: &str = include_str!("../configs/validate.toml");

pub fn figure(number: u8) -> Option<&'static Figure> {
    FIGURES.iter().find(|f| f.number == number)
}

impl Figure {
    pub fn config(&self) -> Result<ExperimentConfig> {
        ExperimentConfig::parse(self.config)
    }
}
