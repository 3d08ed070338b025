//! Dissipative quantum neural networks: topology, perceptrons and feedforward.

pub mod channel;
pub mod fullspace;
pub mod io;
pub mod network;
pub mod topology;

pub use channel::{feedforward, layer_channel, network_output, CompiledNetwork, CompiledTransition, ForwardTrace};
pub use fullspace::{global_output, FullSpaceNetwork};
pub use io::{network_from_json, network_to_json, read_network, write_network, NetworkDocument};
pub use network::{init_network, NetworkState};
pub use topology::NetworkTopology;
