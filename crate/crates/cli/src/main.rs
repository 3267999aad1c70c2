fn main() {
    std::process::exit(repstab_cli::main_with_args(std::env::args_os()));
}
