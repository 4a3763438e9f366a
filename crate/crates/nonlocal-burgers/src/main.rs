fn main() {
    std::process::exit(nonlocal_burgers::cli::run());
}
