pub mod cli;
pub mod jonesengine;
pub mod ktgmodel;
pub mod octgeom;
pub mod qarith;
pub mod qsymbols;
pub mod tloracle;
