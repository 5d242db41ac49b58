pub mod confhomology;
pub mod exactalg;
pub mod poly;
pub mod random;
pub mod scanning;
pub mod spaces;
pub mod spectral;
