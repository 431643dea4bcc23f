fn main() {
    std::process::exit(nccell::run(std::env::args_os()));
}
