//! Space accounting for a built index.

use std::fmt;

use crate::compressed::h0_entropy;
use crate::index::{state_bits_for, SuccinctAcIndex, Transitions};

/// Measured size of one component, in bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBits {
    pub name: &'static str,
    /// The encoded data proper.
    pub payload: u64,
    /// Rank/select directories, lookup tables and word padding.
    pub aux: u64,
}

impl ComponentBits {
    pub fn total(&self) -> u64 {
        self.payload + self.aux
    }
}

/// Reference ratios (space over `n log2 sigma`) of the analytical bound
/// for a few alphabet sizes.
pub const REFERENCE_RATIOS: [(usize, f64); 4] = [(2, 4.0), (4, 2.623), (16, 1.849), (256, 1.43)];

/// Per-symbol constant of the analytical space bound.
pub const BOUND_CONSTANT: f64 = 3.443;

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceReport {
    pub states: usize,
    pub patterns: usize,
    pub total_len: u64,
    pub sigma: usize,
    pub backend: &'static str,
    /// alphabet, transitions, failure tree, report tree, terminals, lengths.
    pub components: Vec<ComponentBits>,
    /// Fixed header words (m, d, n, sigma, state bits).
    pub metadata_bits: u64,
    /// Sum of all component rows.
    pub total_bits: u64,
    /// `m (log2 sigma + 3.443) + d (3 log2 (n / d))`.
    pub formula_bits: f64,
    /// `n log2 sigma`.
    pub lower_bound_bits: f64,
    /// `total_bits / (n log2 sigma)`; infinite for a one-symbol alphabet.
    pub optimality_ratio: f64,
    /// Degree entropy of the report tree, bits per node.
    pub report_tree_hstar: f64,
    /// Entropy of the transition labels, bits per transition.
    pub transition_h0: f64,
    /// Payload bits of the per-symbol dictionaries, when that backend is used.
    pub per_char_payload_bits: Option<u64>,
    /// `m (H0 + 3) + sigma ceil(log2 m)`.
    pub compressed_bound_bits: f64,
}

impl SpaceReport {
    pub fn component(&self, name: &str) -> Option<&ComponentBits> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn bits_per_symbol(&self) -> f64 {
        self.total_bits as f64 / self.total_len as f64
    }

    pub fn reference_ratio(&self) -> Option<f64> {
        REFERENCE_RATIOS
            .iter()
            .find(|(s, _)| *s == self.sigma)
            .map(|&(_, r)| r)
    }
}

pub fn space_report(idx: &SuccinctAcIndex) -> SpaceReport {
    let m = idx.num_states();
    let d = idx.num_patterns();
    let n = idx.total_len();
    let sigma = idx.sigma();

    let components = vec![
        ComponentBits {
            name: "alphabet",
            payload: idx.alphabet().payload_bits(),
            aux: idx.alphabet().aux_bits(),
        },
        ComponentBits {
            name: "transitions",
            payload: idx.transitions().payload_bits(),
            aux: idx.transitions().aux_bits(),
        },
        ComponentBits {
            name: "failure_tree",
            payload: idx.failure_tree().payload_bits(),
            aux: idx.failure_tree().aux_bits(),
        },
        ComponentBits {
            name: "report_tree",
            payload: idx.report_tree().payload_bits(),
            aux: idx.report_tree().aux_bits(),
        },
        ComponentBits {
            name: "terminals",
            payload: idx.terminals().payload_bits(),
            aux: idx.terminals().aux_bits(),
        },
        ComponentBits {
            name: "lengths",
            payload: idx.lengths().payload_bits(),
            aux: idx.lengths().aux_bits(),
        },
    ];
    let total_bits = components.iter().map(ComponentBits::total).sum();

    let log_sigma = (sigma as f64).log2();
    let formula_bits =
        m as f64 * (log_sigma + BOUND_CONSTANT) + d as f64 * 3.0 * (n as f64 / d as f64).log2();
    let lower_bound_bits = n as f64 * log_sigma;
    let optimality_ratio = if lower_bound_bits > 0.0 {
        total_bits as f64 / lower_bound_bits
    } else {
        f64::INFINITY
    };
    let transition_h0 = h0_entropy(&idx.char_distribution());
    let per_char_payload_bits = match idx.transitions() {
        Transitions::Compressed(t) => Some(t.per_char_payload_bits()),
        Transitions::Flat(_) => None,
    };
    let compressed_bound_bits =
        m as f64 * (transition_h0 + 3.0) + (sigma as u64 * state_bits_for(m) as u64) as f64;

    SpaceReport {
        states: m,
        patterns: d,
        total_len: n,
        sigma,
        backend: match idx.backend() {
            crate::index::Backend::Flat => "flat",
            crate::index::Backend::Compressed => "compressed",
        },
        components,
        metadata_bits: 5 * 64,
        total_bits,
        formula_bits,
        lower_bound_bits,
        optimality_ratio,
        report_tree_hstar: idx.report_tree().degree_entropy(),
        transition_h0,
        per_char_payload_bits,
        compressed_bound_bits,
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "m={} d={} n={} sigma={} backend={}",
            self.states, self.patterns, self.total_len, self.sigma, self.backend
        )?;
        writeln!(f, "{:<14} {:>14} {:>14} {:>14}", "component", "payload", "aux", "total")?;
        for c in &self.components {
            writeln!(
                f,
                "{:<14} {:>14} {:>14} {:>14}",
                c.name,
                c.payload,
                c.aux,
                c.total()
            )?;
        }
        let payload: u64 = self.components.iter().map(|c| c.payload).sum();
        let aux: u64 = self.components.iter().map(|c| c.aux).sum();
        writeln!(f, "{:<14} {:>14} {:>14} {:>14}", "total", payload, aux, self.total_bits)?;
        writeln!(f, "header bits            {}", self.metadata_bits)?;
        writeln!(
            f,
            "bits per pattern symbol {:.3} (measured)",
            self.bits_per_symbol()
        )?;
        writeln!(
            f,
            "formula bits            {:.0} (m(log sigma + {BOUND_CONSTANT}) + 3d log(n/d))",
            self.formula_bits
        )?;
        writeln!(f, "n log sigma             {:.0}", self.lower_bound_bits)?;
        match self.reference_ratio() {
            Some(r) => writeln!(
                f,
                "optimality ratio        {:.3} (reference {r})",
                self.optimality_ratio
            )?,
            None => writeln!(f, "optimality ratio        {:.3}", self.optimality_ratio)?,
        }
        writeln!(f, "report tree H*          {:.4} bits/node", self.report_tree_hstar)?;
        writeln!(f, "transition H0           {:.4} bits/transition", self.transition_h0)?;
        if let Some(p) = self.per_char_payload_bits {
            writeln!(f, "per-symbol payload      {p}")?;
        }
        write!(
            f,
            "compressed bound        {:.0} (m(H0 + 3) + sigma ceil(log m))",
            self.compressed_bound_bits
        )
    }
}
