fn main() {
    std::process::exit(isoperiod::cli::main_with_args(std::env::args_os()));
}
