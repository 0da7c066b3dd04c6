//! Fixed-topology sigmoid feedforward networks and their flat-chromosome
//! codec.
//!
//! The chromosome is the concatenation of all weights, layer pair by layer
//! pair. Within a layer pair all weights leaving one source neuron are
//! consecutive, and the bias acts as the last node of the source layer, so
//! its outgoing weights form the final block of the pair.

use thiserror::Error;

/// Number of output neurons: a left and a right steering force.
pub const OUTPUT_NEURONS: usize = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("topology needs at least 3 layers, got {0}")]
    TooFewLayers(usize),
    #[error("layer {index} has zero neurons")]
    EmptyLayer { index: usize },
    #[error("output layer must have {OUTPUT_NEURONS} neurons, got {0}")]
    WrongOutputSize(usize),
}

/// Layer sizes of a feedforward network: input, one or more hidden layers,
/// and a two-neuron output layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    layer_sizes: Vec<usize>,
}

impl Topology {
    pub fn new(layer_sizes: Vec<usize>) -> Result<Self, TopologyError> {
        if layer_sizes.len() < 3 {
            return Err(TopologyError::TooFewLayers(layer_sizes.len()));
        }
        if let Some(index) = layer_sizes.iter().position(|&n| n == 0) {
            return Err(TopologyError::EmptyLayer { index });
        }
        let output = *layer_sizes.last().expect("len checked above");
        if output != OUTPUT_NEURONS {
            return Err(TopologyError::WrongOutputSize(output));
        }
        Ok(Self { layer_sizes })
    }

    /// Builds `[inputs, hidden..., 2]`.
    pub fn with_hidden(inputs: usize, hidden: &[usize]) -> Result<Self, TopologyError> {
        let mut sizes = Vec::with_capacity(hidden.len() + 2);
        sizes.push(inputs);
        sizes.extend_from_slice(hidden);
        sizes.push(OUTPUT_NEURONS);
        Self::new(sizes)
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn input_size(&self) -> usize {
        self.layer_sizes[0]
    }

    /// Total gene count: for each consecutive layer pair,
    /// `(source + 1) * target` weights (the `+1` is the bias node).
    pub fn chromosome_length(&self) -> usize {
        self.layer_sizes
            .windows(2)
            .map(|pair| (pair[0] + 1) * pair[1])
            .sum()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ChromosomeError {
    #[error("gene {index} is not finite ({value})")]
    NonFiniteGene { index: usize, value: f64 },
}

/// Flat ordered vector of network weights; the genetic algorithm's unit of
/// variation.
#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    genes: Vec<f64>,
}

impl Chromosome {
    pub fn new(genes: Vec<f64>) -> Result<Self, ChromosomeError> {
        if let Some(index) = genes.iter().position(|g| !g.is_finite()) {
            return Err(ChromosomeError::NonFiniteGene {
                index,
                value: genes[index],
            });
        }
        Ok(Self { genes })
    }

    pub fn genes(&self) -> &[f64] {
        &self.genes
    }

    pub fn into_genes(self) -> Vec<f64> {
        self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("chromosome length mismatch: topology expects {expected} genes, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForwardError {
    #[error("input length mismatch: network expects {expected} inputs, got {actual}")]
    InputSizeMismatch { expected: usize, actual: usize },
    #[error("input {index} is not finite")]
    NonFiniteInput { index: usize },
}

/// The logistic function `1 / (1 + e^(-x))`.
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// A dense all-sigmoid feedforward network.
///
/// `weights[l]` holds the layer-pair matrix in chromosome order: source
/// neuron `s` contributes the block `weights[l][s * target .. (s + 1) * target]`,
/// with the bias block (`s = source_size`) last.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedforwardNetwork {
    topology: Topology,
    weights: Vec<Vec<f64>>,
}

impl FeedforwardNetwork {
    /// Rebuilds a network from its flat chromosome.
    pub fn decode(chromosome: &Chromosome, topology: &Topology) -> Result<Self, CodecError> {
        let expected = topology.chromosome_length();
        if chromosome.len() != expected {
            return Err(CodecError::LengthMismatch {
                expected,
                actual: chromosome.len(),
            });
        }
        let mut weights = Vec::with_capacity(topology.layer_sizes().len() - 1);
        let mut offset = 0;
        for pair in topology.layer_sizes().windows(2) {
            let block = (pair[0] + 1) * pair[1];
            weights.push(chromosome.genes()[offset..offset + block].to_vec());
            offset += block;
        }
        Ok(Self {
            topology: topology.clone(),
            weights,
        })
    }

    /// Exact inverse of [`FeedforwardNetwork::decode`].
    pub fn encode(&self) -> Chromosome {
        let genes: Vec<f64> = self.weights.iter().flatten().copied().collect();
        Chromosome::new(genes).expect("network weights are finite")
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    /// Weight from `source` neuron (the bias when `source == source_size`)
    /// to `target` neuron within layer pair `layer`.
    pub fn weight(&self, layer: usize, source: usize, target: usize) -> f64 {
        let targets = self.topology.layer_sizes()[layer + 1];
        self.weights[layer][source * targets + target]
    }

    /// Propagates `inputs` through every layer: each layer computes
    /// `sigmoid(W^T * [activations; 1])` with the bias appended last.
    pub fn forward(&self, inputs: &[f64]) -> Result<Vec<f64>, ForwardError> {
        let expected = self.topology.input_size();
        if inputs.len() != expected {
            return Err(ForwardError::InputSizeMismatch {
                expected,
                actual: inputs.len(),
            });
        }
        if let Some(index) = inputs.iter().position(|x| !x.is_finite()) {
            return Err(ForwardError::NonFiniteInput { index });
        }
        let mut activations = inputs.to_vec();
        for (layer, pair) in self.topology.layer_sizes().windows(2).enumerate() {
            let (sources, targets) = (pair[0], pair[1]);
            let matrix = &self.weights[layer];
            let mut next = vec![0.0; targets];
            for (s, &a) in activations.iter().enumerate() {
                let row = &matrix[s * targets..(s + 1) * targets];
                for (n, &w) in next.iter_mut().zip(row) {
                    *n += a * w;
                }
            }
            // Bias node: activation 1, last block of the matrix.
            let bias_row = &matrix[sources * targets..(sources + 1) * targets];
            for (n, &w) in next.iter_mut().zip(bias_row) {
                *n = sigmoid(*n + w);
            }
            activations = next;
        }
        Ok(activations)
    }
}

/// The two output forces and the steering angle they decide.
///
/// Positive angles turn left (counterclockwise, matching the world frame).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringOutput {
    pub left_force: f64,
    pub right_force: f64,
    pub steering_angle: f64,
}

impl SteeringOutput {
    pub fn from_forces(left_force: f64, right_force: f64, max_angle: f64) -> Self {
        Self {
            left_force,
            right_force,
            steering_angle: steering_command(left_force, right_force, max_angle),
        }
    }
}

/// `max_angle * (left - right)`; zero when the forces balance.
pub fn steering_command(left_force: f64, right_force: f64, max_angle: f64) -> f64 {
    max_angle * (left_force - right_force)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn topology(sizes: &[usize]) -> Topology {
        Topology::new(sizes.to_vec()).unwrap()
    }

    fn random_chromosome(topology: &Topology, seed: u64) -> Chromosome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let genes = (0..topology.chromosome_length())
            .map(|_| rng.gen_range(-2.0..2.0))
            .collect();
        Chromosome::new(genes).unwrap()
    }

    #[test]
    fn chromosome_length_follows_bias_rule() {
        assert_eq!(topology(&[2, 3, 2]).chromosome_length(), 17);
        assert_eq!(topology(&[5, 6, 2]).chromosome_length(), 50);
        assert_eq!(topology(&[1, 1, 2]).chromosome_length(), 6);
    }

    #[test]
    fn topology_rejects_bad_shapes() {
        assert_eq!(
            Topology::new(vec![2, 2]),
            Err(TopologyError::TooFewLayers(2))
        );
        assert_eq!(
            Topology::new(vec![2, 0, 2]),
            Err(TopologyError::EmptyLayer { index: 1 })
        );
        assert_eq!(
            Topology::new(vec![2, 3, 3]),
            Err(TopologyError::WrongOutputSize(3))
        );
    }

    #[test]
    fn decode_places_source_blocks_in_order() {
        let topo = topology(&[2, 3, 2]);
        let genes: Vec<f64> = (0..17).map(|i| i as f64).collect();
        let net = FeedforwardNetwork::decode(&Chromosome::new(genes).unwrap(), &topo).unwrap();
        // First hidden block: outgoing weights of input neuron 0.
        assert_eq!(net.weight(0, 0, 0), 0.0);
        assert_eq!(net.weight(0, 0, 1), 1.0);
        assert_eq!(net.weight(0, 0, 2), 2.0);
        // Bias block of the first pair is genes 6..9.
        assert_eq!(net.weight(0, 2, 0), 6.0);
        assert_eq!(net.weight(0, 2, 2), 8.0);
        // Output pair occupies genes 9..17, its bias block genes 15..17.
        assert_eq!(net.weight(1, 0, 0), 9.0);
        assert_eq!(net.weight(1, 3, 0), 15.0);
        assert_eq!(net.weight(1, 3, 1), 16.0);
    }

    #[test]
    fn decode_rejects_wrong_length() {
        let topo = topology(&[2, 3, 2]);
        let short = Chromosome::new(vec![0.0; 16]).unwrap();
        assert_eq!(
            FeedforwardNetwork::decode(&short, &topo),
            Err(CodecError::LengthMismatch {
                expected: 17,
                actual: 16
            })
        );
    }

    #[test]
    fn zero_chromosome_outputs_one_half_everywhere() {
        let topo = topology(&[2, 3, 2]);
        let zero = Chromosome::new(vec![0.0; 17]).unwrap();
        let net = FeedforwardNetwork::decode(&zero, &topo).unwrap();
        let out = net.forward(&[0.3, -1.2]).unwrap();
        assert_eq!(out, vec![0.5, 0.5]);
    }

    #[test]
    fn encode_decode_round_trips_thousand_random_chromosomes() {
        let shapes: [&[usize]; 4] = [&[2, 3, 2], &[5, 6, 2], &[1, 1, 2], &[4, 5, 3, 2]];
        for i in 0..1000u64 {
            let topo = topology(shapes[(i % 4) as usize]);
            let chromosome = random_chromosome(&topo, i);
            let net = FeedforwardNetwork::decode(&chromosome, &topo).unwrap();
            assert_eq!(net.encode(), chromosome);
        }
    }

    #[test]
    fn all_ones_network_encodes_to_all_ones() {
        let topo = topology(&[2, 3, 2]);
        let ones = Chromosome::new(vec![1.0; 17]).unwrap();
        let net = FeedforwardNetwork::decode(&ones, &topo).unwrap();
        assert_eq!(net.encode().genes(), &[1.0; 17]);
    }

    #[test]
    fn forward_matches_hand_computed_scalar_chain() {
        // [1,1,2], all weights 1, input 0:
        // hidden = sigmoid(0*1 + 1) = sigmoid(1); outputs = sigmoid(hidden + 1).
        let topo = topology(&[1, 1, 2]);
        let ones = Chromosome::new(vec![1.0; 6]).unwrap();
        let net = FeedforwardNetwork::decode(&ones, &topo).unwrap();
        let out = net.forward(&[0.0]).unwrap();
        let hidden = 1.0 / (1.0 + (-1.0f64).exp());
        assert!((hidden - 0.7311).abs() < 5e-5);
        let expected = 1.0 / (1.0 + (-(hidden + 1.0)).exp());
        assert!((expected - 0.8495).abs() < 5e-5);
        assert!((out[0] - expected).abs() < 1e-15);
        assert!((out[1] - expected).abs() < 1e-15);
    }

    /// Oracle route: build explicit [target][source+1] matrices and dot rows,
    /// independent of the implementation's source-major accumulation.
    fn forward_oracle(topo: &Topology, genes: &[f64], inputs: &[f64]) -> Vec<f64> {
        let mut offset = 0;
        let mut activations = inputs.to_vec();
        for pair in topo.layer_sizes().windows(2) {
            let (sources, targets) = (pair[0], pair[1]);
            let mut matrix = vec![vec![0.0; sources + 1]; targets];
            for s in 0..=sources {
                for (t, row) in matrix.iter_mut().enumerate() {
                    row[s] = genes[offset + s * targets + t];
                }
            }
            offset += (sources + 1) * targets;
            let mut extended = activations.clone();
            extended.push(1.0);
            activations = matrix
                .iter()
                .map(|row| {
                    let sum: f64 = row.iter().zip(&extended).map(|(w, a)| w * a).sum();
                    1.0 / (1.0 + (-sum).exp())
                })
                .collect();
        }
        activations
    }

    #[test]
    fn forward_matches_matrix_oracle_on_random_networks() {
        let shapes: [&[usize]; 3] = [&[2, 3, 2], &[5, 6, 2], &[3, 4, 4, 2]];
        let mut rng = ChaCha8Rng::seed_from_u64(901);
        for i in 0..100u64 {
            let topo = topology(shapes[(i % 3) as usize]);
            let chromosome = random_chromosome(&topo, 5000 + i);
            let inputs: Vec<f64> = (0..topo.input_size())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let net = FeedforwardNetwork::decode(&chromosome, &topo).unwrap();
            let got = net.forward(&inputs).unwrap();
            let want = forward_oracle(&topo, chromosome.genes(), &inputs);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-12, "forward {g} vs oracle {w}");
            }
        }
    }

    #[test]
    fn forward_rejects_wrong_input_arity() {
        let topo = topology(&[2, 3, 2]);
        let net =
            FeedforwardNetwork::decode(&Chromosome::new(vec![0.0; 17]).unwrap(), &topo).unwrap();
        assert_eq!(
            net.forward(&[1.0]),
            Err(ForwardError::InputSizeMismatch {
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn chromosome_rejects_non_finite_genes() {
        assert!(matches!(
            Chromosome::new(vec![0.0, f64::NAN]),
            Err(ChromosomeError::NonFiniteGene { index: 1, .. })
        ));
        assert!(matches!(
            Chromosome::new(vec![f64::INFINITY]),
            Err(ChromosomeError::NonFiniteGene { index: 0, .. })
        ));
    }

    #[test]
    fn steering_command_examples() {
        assert_eq!(steering_command(0.5, 0.5, 0.7), 0.0);
        assert_eq!(steering_command(1.0, 0.0, 0.5), 0.5);
        assert!((steering_command(0.3, 0.8, 0.6) - (-0.3)).abs() < 1e-15);
        let out = SteeringOutput::from_forces(0.3, 0.8, 0.6);
        assert!((out.steering_angle + 0.3).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn chromosome_length_is_monotone_in_layer_sizes(
            sizes in proptest::collection::vec(1usize..8, 1..4),
            bump in 0usize..3,
        ) {
            let mut layers = vec![sizes[0]];
            layers.extend(sizes.iter().skip(1));
            layers.push(OUTPUT_NEURONS);
            if layers.len() < 3 {
                layers.insert(1, 3);
            }
            let base = Topology::new(layers.clone()).unwrap().chromosome_length();
            let grow_at = bump % (layers.len() - 1);
            layers[grow_at] += 1;
            let grown = Topology::new(layers).unwrap().chromosome_length();
            prop_assert!(grown > base);
        }

        #[test]
        fn forward_outputs_stay_strictly_inside_unit_interval(
            seed in 0u64..500,
            inputs in proptest::collection::vec(0.0f64..1.0, 5),
        ) {
            let topo = topology(&[5, 6, 2]);
            let chromosome = random_chromosome(&topo, seed);
            let net = FeedforwardNetwork::decode(&chromosome, &topo).unwrap();
            let out = net.forward(&inputs).unwrap();
            prop_assert!(out.iter().all(|o| *o > 0.0 && *o < 1.0));
        }

        #[test]
        fn steering_stays_strictly_inside_max_angle(
            left in 0.0001f64..0.9999,
            right in 0.0001f64..0.9999,
            max_angle in 0.01f64..1.5,
        ) {
            let angle = steering_command(left, right, max_angle);
            prop_assert!(angle.abs() < max_angle);
        }

        #[test]
        fn perturbing_one_gene_changes_the_decoded_network(
            index in 0usize..17,
            delta in 0.25f64..2.0,
        ) {
            let topo = topology(&[2, 3, 2]);
            let chromosome = random_chromosome(&topo, 77);
            let mut genes = chromosome.genes().to_vec();
            genes[index] += delta;
            let perturbed = Chromosome::new(genes).unwrap();
            let a = FeedforwardNetwork::decode(&chromosome, &topo).unwrap();
            let b = FeedforwardNetwork::decode(&perturbed, &topo).unwrap();
            prop_assert!(a != b);
            prop_assert_eq!(b.encode(), perturbed);
        }
    }
}
