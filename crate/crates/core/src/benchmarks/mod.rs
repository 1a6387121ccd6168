//! Benchmark objectives: classic test functions plus the one-zone RC
//! building-thermal identification problem (ODE model, fixed-step RK4
//! integration, MAE objective, synthetic dataset generation and CSV I/O).

pub mod functions;
pub mod io;
pub mod rc;
pub mod synth;
