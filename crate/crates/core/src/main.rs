fn main() {
    std::process::exit(ptsim::harness::cli_main());
}
