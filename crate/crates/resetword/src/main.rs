fn main() -> std::process::ExitCode {
    resetword::cli::main()
}
